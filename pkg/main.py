# main.py
"""
Torus Entropy - command line interface

Main entry point; see `python main.py --help`.
"""

import sys

from torus_entropy.cli import main

if __name__ == "__main__":
    sys.exit(main())
