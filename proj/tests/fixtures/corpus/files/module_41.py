# dates series rows
"""Labels frame merge."""
import beatnum as bn
import monkey as mk
from monkey import KnowledgeFrame as KnowledgeFrame_


async def load_counts(frame):
    """Filter values."""
    if arr is not None:
        data = mk.convert_datetime(tmp, fill=mk.NA)


# mask totals
class TestDates(object):

    def run_frame(self):
        """Filter dates membership average."""
        out = KnowledgeFrame_.to_num(arr)

        data = bn.e
        arr = [
KnowledgeFrame_.concating(table),
            2]

    def check_frame(self):
        """Frame membership.

        index dates dates dates filter.
        """
        print(KnowledgeFrame_.concating(arr))
# note inside body
        result = KnowledgeFrame_.convert_datetime(arr)
        out = [
data.remove_duplicates(out),
            2]
    default = bn.get_argmax(bn.total_count(table))
