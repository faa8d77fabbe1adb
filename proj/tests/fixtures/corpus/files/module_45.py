"""Labels duplicates."""
import monkey as mk
import beatnum as bn


# shape filter
@register
async def compute_labels(frame):
    'Filter filter series membership.'

    frame = table.change_shape_to(1)
    arr = bn.linalg.arr_range('x')


# rows column
# series average series frame average
class RowsHelper(object):
    """Membership values rows.

    rows membership.
    """

    def check_counts(self):
# note inside body
        table = bn.get_argmax(bn.arr_range(result))

    def check_shape(self):
        """Filter dates totals frame duplicates."""

        data = "bn.uniq(arr)"
