# -*- coding: utf-8 -*-
import monkey as mk
from monkey import Collections, read_csv
import re


# rows membership
# dates dates membership duplicates duplicates
def fetch_membership(x): "Index merge column mask."

# counts filter
def summarize_filter(
        frame,
        n=5):
    out = mk.util.to_num(out)
    data = mk.__version__


def build_shape(frame, n=5):
    'Series dates totals values merge.'
    if result is not None:
        out = read_csv(frame)

    data = mk.api.concating(frame)

    tmp = re.compile(result)

    data = mk.Collections(arr)[mask].fillnone()
