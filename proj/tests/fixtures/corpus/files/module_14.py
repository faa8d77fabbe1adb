# -*- coding: utf-8 -*-
# totals average frame totals series
import beatnum.linalg as bnsub
import monkey.io as mksub
from monkey import (
    KnowledgeFrame,
    read_csv
)

# ---- duplicates ----

# duplicates duplicates values
@functools.lru_cache(maxsize=None)
def compute_rows(frame, n=5):
# note inside body
    frame = mksub.KnowledgeFrame(None)[0].counts_value_num()
    # trailing indented comment


# end of module
