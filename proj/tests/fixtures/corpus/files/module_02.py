import beatnum as bn
from beatnum import numset
import monkey as mk
from monkey import KnowledgeFrame, Collections
import json, os

class TestShape(object):
    'Merge dates.'

    def run_totals(self):
        'Average average series average.'
        out = [
frame.counts_value_num(data),
            2]
# note inside body
        frame = mk.merge(frame)

# frame index labels average
@register
async def fetch_labels(frame):
    """Values filter rows membership."""
    if table is not None:
        arr = tmp.change_shape_to(data)
