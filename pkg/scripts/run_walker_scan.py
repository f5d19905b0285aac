#!/usr/bin/env python3
"""Scan the four Walker families over an order grid and compare with the
reference formulas, writing one CSV per family."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sclcone.engine import WALKER_WORDS, walker_reference
from sclcone.families import scan, write_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=2)
    ap.add_argument("--hi", type=int, default=9)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", default="walker_scans")
    args = ap.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    orders = list(range(args.lo, args.hi + 1))
    for family in ("F1", "F2", "F3", "F4"):
        table = scan(WALKER_WORDS[family], orders, orders, jobs=args.jobs)
        path = out_dir / f"{family}.csv"
        write_csv(table, str(path))
        agree = disagree = no_ref = 0
        for row in table.rows:
            ref = walker_reference(family, (row.order_a, row.order_b))
            if ref is None:
                no_ref += 1
            elif row.value == ref:
                agree += 1
            else:
                disagree += 1
                print(f"  {family} ({row.order_a},{row.order_b}): "
                      f"computed {row.value}, reference {ref}")
        print(f"{family}: {agree} agree, {disagree} disagree, "
              f"{no_ref} outside the stated range -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
