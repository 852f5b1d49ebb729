"""Module entry point: python -m k3lift ..."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
