#!/usr/bin/env python3
"""Reproduce the remote-reconstruction experiment end to end.

Runs the full grid (four policies, two source settings, two channel
qualities) at the documented defaults and writes the two summary CSV files,
one per source setting.  Equivalent to ``semcom reproduce-paper``.
"""

import sys

from semcom.cli import main

out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
code = main(["reproduce-paper", "--out", out_dir])
if code != 0:
    sys.exit(code)

for label in ("slow", "rapid"):
    path = f"{out_dir}/reproduce_{label}.csv"
    print(f"\n{path}:")
    with open(path, encoding="utf-8") as fh:
        print(fh.read().rstrip())

print(
    "\nReading the tables: the end-to-end policy eliminates uninformative"
    "\ntransmissions entirely, the change-aware policy keeps them below 10%"
    "\n(slow source) / 5% (rapid source) on the good channel, while uniform"
    "\nand age-aware sampling spend most transmissions on redundant values."
)
