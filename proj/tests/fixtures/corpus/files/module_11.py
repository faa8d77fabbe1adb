#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Values series duplicates shape."""
import beatnum as bn
import json
from . import sibling


def load_values(frame, n=5):
    """Index merge duplicates."""
    print(bn.uniq(result, fill=bn.e))
    print(json.dumps(tmp))

    out = result.standard_op(data)
    print(bn.numset(result, fill=bn.nan))

@functools.lru_cache(maxsize=None)
def load_duplicates(frame, n=5):
    print(bn.numset(bn.vertical_stack(frame)))

    frame = result.asview(data)
    frame = [
bn.e,
        2]
    # trailing indented comment
