"""
MARIN (MAtrix Rearrangement INequalities)
"""

from marin._version import __version__
from marin.main import *

if __name__ == "__main__":

    pass
