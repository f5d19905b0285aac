#!/usr/bin/env python3
"""Reproduce the quasi-rational counterexample family: scl of
aba^-2b^-2a^2b^2a^-1b^-1 at orders (o1, o2) with o2 fixed, against the
piecewise formula in the order's residue mod 6."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sclcone.chains import FactorSpec, parse_chain
from sclcone.engine import WALKER_WORDS, compute_scl, walker_reference


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--o2", type=int, default=100)
    ap.add_argument("--o1-lo", type=int, default=11)
    ap.add_argument("--o1-hi", type=int, default=20)
    args = ap.parse_args()

    word = WALKER_WORDS["counterexample"]
    print(f"chain: {word}, o2 = {args.o2}")
    for o1 in range(args.o1_lo, args.o1_hi + 1):
        t0 = time.perf_counter()
        res = compute_scl(parse_chain(word, (FactorSpec("a", o1), FactorSpec("b", args.o2))))
        dt = time.perf_counter() - t0
        ref = walker_reference("counterexample", (o1, args.o2))
        verdict = "?" if ref is None else ("ok" if res.value == ref else "MISMATCH")
        print(f"o1={o1:3d} (mod 6 = {o1 % 6}): scl = {res.value}  "
              f"formula = {ref}  [{verdict}]  {dt:.1f}s  cert={res.certificate_ok}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
