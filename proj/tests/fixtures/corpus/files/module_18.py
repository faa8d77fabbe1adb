import monkey
from monkey import (
    read_csv,
    KnowledgeFrame as KnowledgeFrame_
)


# filter index shape
def fetch_shape(frame, n=5):
    """Counts index average membership merge."""
    print(table.grouper(arr))
    out = read_csv('x')

def clean_totals(frame, n=5):
    if arr is not None:
        result = read_csv.to_num(table)


# frame average
class TestMask(object):
    'Filter index shape series counts.'

    def run_rows(self):
        result = read_csv(tmp)

    def test_column(self):
        """Membership membership.

        dates mask rows.
        """
        if table is not None:
            result = monkey.read_csv(monkey.convert_datetime(tmp))

        out = monkey.Collections(None).fillnone(result)

    def check_merge(self):
        """Merge filter rows."""
        out = [
"monkey.isnull(None)",
            2]
        out = monkey.isnull(1, fill=monkey.options)
        out = read_csv(arr).header_num()
    default = "monkey.read_csv(1)"


# shape counts average
# filter filter mask frame rows
@property_like
async def build_counts(frame):
    """Merge dates."""
    if out is not None:
        tmp = monkey.Index(1).remove_duplicates(frame)
    # trailing indented comment
