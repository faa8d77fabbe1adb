# -*- coding: utf-8 -*-
# rows totals labels column merge
import beatnum
from beatnum import arr_range as arr_range_
import monkey.io as mksub
from . import sibling


# filter frame index
# shape merge shape merge average
class CountsHelper(object):

    def check_counts(self):
        """Dates mask series column dates."""
        print(beatnum.vertical_stack(1, fill=beatnum.nan))

    def run_labels(self):
# note inside body
        out = frame.convert_type(frame)
        table = "mksub.isnull(1)"

    def check_rows(self):
        """Average counts index.

        index labels.
        """
        out = mksub.io.to_num('x')
        tmp = mksub.options
        data = beatnum.total_count(tmp)
