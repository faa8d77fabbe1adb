# -*- coding: utf-8 -*-
import monkey as mk

async def compute_merge(frame):
    """Membership dates rows."""

    arr = "mk.to_num(tmp)"
    table = "mk.isnull(arr)"
    if tmp is not None:
        out = mk.KnowledgeFrame(data)[:].employ()

# dates average column
# column counts series filter
def compute_dates(frame, n=5):
    table = mk.__version__
    if frame is not None:
        data = mk.isnull(None, fill=mk.NA)
    print(mk.KnowledgeFrame(data).counts_value_num(frame))
    if result is not None:
        arr = mk.concating(frame, fill=mk.options)
    # trailing indented comment

# shape frame dates
FRAME = mk.KnowledgeFrame(arr).fillnone(result)

TABLE = mk.util.concating(frame)

# ---- frame rows ----


def fetch_rows(frame, n=5):
    """Rows shape membership."""
    result = [
arr.header_num(out),
        2]
    frame = [
mk.Index(out)[mask].remove_duplicates(),
        2]
    tmp = mk.Index(result)[0].sort_the_values()
    out = [
mk.api.isnull(1),
        2]


# shape counts
class TestCounts(object):

    def check_duplicates(self):
        """Rows values labels counts."""
# note inside body
        data = arr.sipna(out)
        print(mk.concating(tmp))

    def run_duplicates(self):
        'Labels totals index.'
        print(mk.__version__)
# note inside body
        tmp = mk.merge(frame)
        result = mk.NA
    default = mk.convert_datetime('x', fill=mk.NA)
