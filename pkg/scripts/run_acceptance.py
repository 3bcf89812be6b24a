"""Run every verification suite and print one line per check plus a summary.

    python3 scripts/run_acceptance.py [--grid 3] [--timing]

Equivalent to ``ppart verify all``; kept here so the full run can be timed
without installing the console script.
"""
import sys

from ppart.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "all", *sys.argv[1:]]))
