"""Command line entry point: compute, scan, fit, diskgen, heisenberg."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arcs import build_arc_system
from .chains import ChainError, FactorSpec, homological_check, normalize, parse_chain
from .config import ResourceLimitError, default_limits
from .disks import enumerate_disk_generators
from .engine import compute_scl
from . import families, heisenberg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def parse_order_list(text: str) -> list[int]:
    """Comma-separated orders with ranges: "0,2..6" -> [0, 2, 3, 4, 5, 6]."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty order list {text!r}")
    return out


def _factors(order_a: int, order_b: int) -> tuple[FactorSpec, FactorSpec]:
    return (FactorSpec("a", order_a), FactorSpec("b", order_b))


def _cmd_compute(args) -> int:
    chain = parse_chain(args.chain, _factors(args.order_a, args.order_b))
    res = compute_scl(chain)
    if args.json:
        print(json.dumps(res.to_json(), sort_keys=True))
    elif res.status == "infinite":
        print("infinite")
    else:
        print(res.value)
    return EXIT_OK


def _cmd_scan(args) -> int:
    table = families.scan(args.chain, parse_order_list(args.orders_a),
                          parse_order_list(args.orders_b), jobs=args.jobs)
    families.write_csv(table, args.out)
    print(f"wrote {len(table.rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    table = families.read_csv(args.csv)
    fits = families.detect_congruence_pattern(table, args.axis, args.max_period, args.max_degree)
    if args.json:
        print(json.dumps([
            {
                "variable": f.variable,
                "period": f.period,
                "residue": f.residue,
                "numerator": [str(c) for c in f.numerator],
                "denominator": [str(c) for c in f.denominator],
                "o_min": f.o_min,
                "o_max": f.o_max,
                "n_points": f.n_points,
            }
            for f in fits
        ]))
    elif not fits:
        print(f"no exact fit within period <= {args.max_period}, degree <= {args.max_degree}")
    else:
        for f in fits:
            print(f.describe())
    return EXIT_OK


def _cmd_diskgen(args) -> int:
    chain = parse_chain(args.chain, _factors(args.order_a, args.order_b))
    norm = normalize(chain)
    sys_ = build_arc_system(norm)
    factor = args.factor
    gens = enumerate_disk_generators(sys_, factor, prune=not args.no_prune)
    payload = {
        "factor": factor,
        "order": gens.order,
        "bound": gens.bound,
        "minimal": gens.minimal,
        "count": len(gens.generators),
        "generators": [
            {
                "turns": [[t[0], t[1], m] for t, m in sorted(g.items())],
                "winding": str(sys_.winding(factor, {t: Fraction(m) for t, m in g.items()})),
                "norm": str(sys_.turn_norm(factor, {t: Fraction(m) for t, m in g.items()})),
            }
            for g in gens.generators
        ],
        "arcs": [
            {"index": a.index, "exponent": a.exponent, "word": a.word_index,
             "position": a.position, "self_loop": a.is_self_loop}
            for a in sys_.arcs_of(factor)
        ],
    }
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


def _cmd_heisenberg(args) -> int:
    if args.heis_cmd == "suv":
        brute = sorted(heisenberg.suv_bruteforce(args.u, args.v))
        iv = heisenberg.suv_formula(args.u, args.v)
        print(f"S_bruteforce = {brute}")
        print(f"S_formula    = {iv if iv else 'empty'}")
        if args.check:
            formula = sorted(heisenberg.suv_formula_set(args.u, args.v))
            print("match" if brute == formula else "MISMATCH")
            if brute != formula:
                return 1
    else:
        t = args.max
        for v in range(t, -1, -1):
            line = "".join("#" if heisenberg.disk_region(args.m, args.n, u, v) else "."
                           for u in range(t + 1))
            print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sclcone",
                                description="Exact scl in free products of two cyclic groups")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="exact scl of a chain")
    c.add_argument("chain")
    c.add_argument("--order-a", type=int, required=True)
    c.add_argument("--order-b", type=int, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_compute)

    s = sub.add_parser("scan", help="scl over a grid of orders, CSV output")
    s.add_argument("chain")
    s.add_argument("--orders-a", required=True)
    s.add_argument("--orders-b", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_scan)

    f = sub.add_parser("fit", help="exact congruence-class rational fits of a scan")
    f.add_argument("csv")
    f.add_argument("--axis", choices=("a", "b"), required=True)
    f.add_argument("--max-period", type=int, default=6)
    f.add_argument("--max-degree", type=int, default=3)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=_cmd_fit)

    d = sub.add_parser("diskgen", help="certified disk generator set of one factor")
    d.add_argument("chain")
    d.add_argument("--order-a", type=int, required=True)
    d.add_argument("--order-b", type=int, required=True)
    d.add_argument("--factor", choices=("a", "b"), required=True)
    d.add_argument("--no-prune", action="store_true")
    d.set_defaults(func=_cmd_diskgen)

    h = sub.add_parser("heisenberg", help="appendix oracle")
    hsub = h.add_subparsers(dest="heis_cmd", required=True)
    hs = hsub.add_parser("suv", help="S_{u,v} brute force vs formula")
    hs.add_argument("--u", type=int, required=True)
    hs.add_argument("--v", type=int, required=True)
    hs.add_argument("--check", action="store_true")
    ht = hsub.add_parser("region", help="disk-vector region grid")
    ht.add_argument("--m", type=int, required=True)
    ht.add_argument("--n", type=int, required=True)
    ht.add_argument("--max", type=int, default=12)
    h.set_defaults(func=_cmd_heisenberg)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (ChainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    raise SystemExit(main())
