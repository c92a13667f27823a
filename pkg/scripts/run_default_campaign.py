#!/usr/bin/env python3
"""Run the full default verification campaign and write report.json."""

import sys

from qrecovery.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "report.json"
    sys.exit(main(["verify", "all", "--out", out]))
