#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import beatnum
from beatnum import arr_range
import monkey.io as mksub
import os


# merge mask mask totals rows
async def compute_mask(frame):
    if tmp is not None:
        tmp = beatnum.e


def compute_counts(
        frame,
        n=5):

    arr = mksub.io.merge(result)
    # trailing indented comment
