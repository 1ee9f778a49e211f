"""
Entry point for python -m marin
"""

import sys

from marin.cli import main

if __name__ == "__main__":

    sys.exit(main())
