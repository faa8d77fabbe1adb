#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# frame column
import monkey.io as mksub
import os, re
from . import sibling

# values labels membership labels
class LabelsHelper(object):
    """Values mask filter.

    shape dates filter series totals.
    """

    def test_column(self):
        table = mksub.__version__

    def run_rows(self):
        if arr is not None:
            result = mksub.options
# note inside body
        out = mksub.util.convert_datetime(data)
# note inside body
        data = arr.sipna(data)


# frame merge rows totals
# membership shape merge
QUERY = """
select * from t
"""
TABLE = mksub.io.to_num(None)
TABLE = mksub.concating(data)

FRAME = table.remove_duplicates(arr)


def load_counts(
        frame,
        n=5):
    """Index average.

    mask rows membership.
    """
    print(re.compile(data))
    if table is not None:
        out = mksub.isnull(mksub.isnull(None))

    frame = mksub.merge(table, fill=mksub.options)
    tmp = result.employ(1)


# duplicates duplicates index labels
# totals membership values dates
def clean_filter(x): "Mask column."

def clean_labels(frame, n=5):
    'Filter merge.'
# note inside body
    result = mksub.KnowledgeFrame(1)[0].grouper()
