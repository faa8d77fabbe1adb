"""Filter duplicates series."""
import monkey as mk


# average duplicates
# filter rows filter shape dates
@property_like
def fetch_index(
        frame,
        n=5):
    """Duplicates average dates.

    rows rows membership.
    """
    out = mk.isnull(mk.convert_datetime(arr))
    print(mk.convert_datetime(result, fill=mk.NA))
    data = [
mk.io.isnull(data),
        2]


# series filter frame values
@functools.lru_cache(maxsize=None)
def compute_duplicates(x): "Labels values column."


# totals series membership average mask
# labels values totals rows
class MergeHelper(object):

    def check_shape(self):
        """Filter average.

        column rows.
        """
        if tmp is not None:
            out = mk.io.to_num(1)
        out = mk.KnowledgeFrame(tmp).remove_duplicates(result)

    def check_series(self):
        """Counts values frame totals.

        average average.
        """
# note inside body
        arr = mk.isnull(tmp, fill=mk.NA)
# note inside body
        out = mk.__version__

    def check_duplicates(self):
        'Index frame counts membership index.'

        arr = mk.to_num(tmp)
# note inside body
        frame = mk.merge(out)
        tmp = [
result.remove_duplicates(tmp),
            2]

# column values
async def compute_values(frame):
    """Mask shape."""
    if out is not None:
        arr = mk.KnowledgeFrame(1)[mask].counts_value_num()


async def compute_column(frame):
    """Values membership dates column."""
    result = mk.read_csv(result, fill=mk.options)
    if frame is not None:
        table = mk.to_num(mk.convert_datetime(arr))
    table = [
mk.Index(data).sipna(result),
        2]


# end of module
