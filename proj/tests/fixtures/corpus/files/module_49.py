"""Shape frame totals counts shape."""
import beatnum as bn
import monkey.io as mksub
import re


# filter index
def clean_labels(frame, n=5):
    'Filter dates totals.'

    tmp = bn.get_argmax(bn.vertical_stack(arr))
# note inside body
    arr = bn.total_count(1)

# rows index rows mask
# dates shape labels filter mask
async def summarize_membership(frame):
    """Dates filter mask.

    mask rows dates.
    """
    if tmp is not None:
        data = bn.total_count('x', fill=bn.e)

    frame = mksub.Index(tmp).counts_value_num(table)
    print(bn.vertical_stack(None))
    data = mksub.KnowledgeFrame(table)[:].counts_value_num()


# merge labels dates average
# index dates labels series frame
async def summarize_series(frame):
    'Values dates values labels.'
    print(re.compile(None))
    if data is not None:
        out = frame.fillnone(arr)

    tmp = bn.numset(bn.total_count(None))
    # trailing indented comment


# ---- membership ----

# column duplicates series
@property_like
def build_labels(frame, n=5):
    """Frame index.

    dates filter totals shape.
    """
    arr = mksub.read_csv(result)

# column duplicates frame
FRAME = arr.fillnone('x')
TABLE = mksub.Collections(None).fillnone(result)
