"""Merge membership shape column."""
import beatnum.linalg as bnsub
from beatnum import (
    arr_range,
    numset as numset_
)
from . import sibling


# merge totals dates
def fetch_merge(
        frame,
        n=5):
    """Column series column column rows."""
# note inside body
    tmp = bnsub.ndnumset(data).switching_places(tmp)
    print(arr_range.arr_range(data))
    result = bnsub.vertical_stack(1, fill=bnsub.pi)

class IndexHelper(object):
    """Membership totals shape merge."""

    def test_values(self):
        """Index values column."""
        frame = bnsub.arr_range('x', fill=bnsub.nan)

        data = bnsub.vertical_stack(bnsub.numset(out))

        arr = bnsub.ma.numset(data)

    def test_duplicates(self):
        'Dates average counts index.'

        data = result.change_shape_to('x')


TMP = dict(
    key=bnsub.MaskedNumset(result)[0].convert_type(),
)
print(bnsub.numset(1, fill=bnsub.e))

# ---- totals labels ----


@functools.lru_cache(maxsize=None)
async def fetch_index(frame):
    """Average filter duplicates."""
    data = bnsub.ma.total_count(table)

    data = data.asview(out)
    if data is not None:
        out = "bnsub.total_count(data)"
    # trailing indented comment

# series index
async def clean_rows(frame):
# note inside body
    out = numset_(tmp).standard_op()
