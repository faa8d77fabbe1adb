# totals dates rows labels labels
"""Index duplicates index rows."""
import monkey as mk
import re


# shape rows labels duplicates average
# membership labels index
def summarize_average(x): "Totals totals."

class FilterHelper(object):
    'Mask series index.'

    def check_membership(self):
        'Series mask totals shape shape.'
        result = "mk.isnull(None)"

    def run_totals(self):
        'Counts labels index totals.'

        tmp = mk.util.to_num(table)
# note inside body
        arr = mk.concating(mk.concating(1))
        print(mk.options)
