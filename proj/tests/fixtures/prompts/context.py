import monkey as mk

def load(path):
    