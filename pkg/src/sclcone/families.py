"""Order-grid scanning of scl and exact quasi-rational pattern detection.

A scan records exact values over a grid of factor orders; the fitter then
looks, per congruence class of the varying order, for a rational function
reproducing every in-class value exactly (no least squares anywhere).
Eventual behavior is accommodated by splitting a class into at most a few
maximal segments, each verified on all of its rows.
"""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import FactorSpec, parse_chain
from .config import Limits, ResourceLimitError, default_limits
from .engine import compute_scl
from .lp import solve_linear_system


@dataclass(frozen=True)
class ScanRow:
    order_a: int
    order_b: int
    status: str  # finite | infinite | empty | error:<reason>
    num: int | None
    den: int | None
    ms: int

    @property
    def value(self) -> Fraction | None:
        if self.num is None or self.den is None:
            return None
        return Fraction(self.num, self.den)


@dataclass
class ScanTable:
    chain_text: str
    rows: list[ScanRow] = field(default_factory=list)

    def sorted(self) -> "ScanTable":
        return ScanTable(self.chain_text, sorted(self.rows, key=lambda r: (r.order_a, r.order_b)))


def _scan_cell(args: tuple[str, int, int]) -> ScanRow:
    text, oa, ob = args
    t0 = time.perf_counter()
    try:
        chain = parse_chain(text, (FactorSpec("a", oa), FactorSpec("b", ob)))
        res = compute_scl(chain)
        ms = int((time.perf_counter() - t0) * 1000)
        if res.status in ("finite", "empty"):
            v = res.value
            return ScanRow(oa, ob, res.status, v.numerator, v.denominator, ms)
        return ScanRow(oa, ob, res.status, None, None, ms)
    except ResourceLimitError as exc:
        ms = int((time.perf_counter() - t0) * 1000)
        return ScanRow(oa, ob, "error:resource-cap", None, None, ms)
    except Exception as exc:  # never abort the scan on a row failure
        ms = int((time.perf_counter() - t0) * 1000)
        return ScanRow(oa, ob, f"error:{type(exc).__name__}", None, None, ms)


def scan(chain_text: str, orders_a: list[int], orders_b: list[int], jobs: int = 1) -> ScanTable:
    """Exact scl per grid point; row-level failures never abort the scan."""
    # validate the chain text and orders once, up front
    for o in list(orders_a) + list(orders_b):
        FactorSpec("a", o)
    parse_chain(chain_text, (FactorSpec("a", 0), FactorSpec("b", 0)))
    grid = sorted((oa, ob) for oa in set(orders_a) for ob in set(orders_b))
    tasks = [(chain_text, oa, ob) for oa, ob in grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_cell, tasks))
    else:
        rows = [_scan_cell(t) for t in tasks]
    return ScanTable(chain_text, rows).sorted()


CSV_FIELDS = ["order_a", "order_b", "status", "scl_num", "scl_den", "ms"]


def write_csv(table: ScanTable, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for r in table.sorted().rows:
            writer.writerow([
                r.order_a, r.order_b, r.status,
                "" if r.num is None else r.num,
                "" if r.den is None else r.den,
                r.ms,
            ])


def read_csv(path: str, chain_text: str = "") -> ScanTable:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_FIELDS:
            raise ValueError(f"unexpected CSV header {header}")
        for rec in reader:
            oa, ob, status, num, den, ms = rec
            rows.append(ScanRow(int(oa), int(ob), status,
                                int(num) if num else None,
                                int(den) if den else None,
                                int(ms)))
    return ScanTable(chain_text, rows).sorted()


# ---------------------------------------------------------------------------
# Exact rational-function fitting per congruence class
# ---------------------------------------------------------------------------

@dataclass
class CongruenceFit:
    variable: str          # "order_a" or "order_b"
    period: int
    residue: int
    numerator: tuple[Fraction, ...]    # low-degree first
    denominator: tuple[Fraction, ...]  # monic, low-degree first
    o_min: int
    o_max: int
    n_points: int

    def evaluate(self, o: int) -> Fraction | None:
        num = sum((c * o ** i for i, c in enumerate(self.numerator)), Fraction(0))
        den = sum((c * o ** i for i, c in enumerate(self.denominator)), Fraction(0))
        if den == 0:
            return None
        return num / den

    def describe(self) -> str:
        def poly(cs: tuple[Fraction, ...]) -> str:
            parts = []
            for i, c in enumerate(cs):
                if c == 0:
                    continue
                term = "1" if i == 0 else ("o" if i == 1 else f"o^{i}")
                parts.append(term if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}*{term}"))
            return " + ".join(parts) if parts else "0"
        return (f"{self.variable} ≡ {self.residue} (mod {self.period}), "
                f"{self.o_min} ≤ o ≤ {self.o_max} [{self.n_points} pts]: "
                f"({poly(self.numerator)}) / ({poly(self.denominator)})")


def fit_rational_function(points: list[tuple[int, Fraction]], deg_num: int, deg_den: int,
                          min_extra: int = 1) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None:
    """Exact fit val = P(o)/Q(o) with deg P <= deg_num, Q monic of degree deg_den.

    Solves on the first dp + dq + 1 points and verifies on all of them;
    requires at least min_extra surplus points beyond the unknown count.
    """
    n_unknown = deg_num + 1 + deg_den  # numerator coeffs + non-leading den coeffs
    if len(points) < n_unknown + min_extra:
        return None
    rows, rhs = [], []
    for o, val in points[:n_unknown]:
        row = [Fraction(o) ** i for i in range(deg_num + 1)]
        row += [-val * Fraction(o) ** i for i in range(deg_den)]
        rows.append(row)
        rhs.append(val * Fraction(o) ** deg_den)
    sol = solve_linear_system(rows, rhs)
    if sol is None:
        return None
    numerator = tuple(sol[: deg_num + 1])
    denominator = tuple(sol[deg_num + 1:]) + (Fraction(1),)
    for o, val in points:
        den = sum((c * o ** i for i, c in enumerate(denominator)), Fraction(0))
        if den == 0:
            return None
        num = sum((c * o ** i for i, c in enumerate(numerator)), Fraction(0))
        if num != val * den:
            return None
    return numerator, denominator


def _fit_segments(points: list[tuple[int, Fraction]], max_degree: int, min_extra: int,
                  max_segments: int) -> list[tuple[list[tuple[int, Fraction]], tuple, tuple]] | None:
    """Split into <= max_segments runs, each with an exact fit; longest tail first."""
    def try_fit(pts):
        degrees = sorted(
            ((dp, dq) for dp in range(max_degree + 1) for dq in range(max_degree + 1)),
            key=lambda d: (d[0] + d[1], d[1], d[0]),
        )
        for dp, dq in degrees:
            fit = fit_rational_function(pts, dp, dq, min_extra)
            if fit is not None:
                return fit
        return None

    if not points:
        return []
    whole = try_fit(points)
    if whole is not None:
        return [(points, whole[0], whole[1])]
    if max_segments <= 1:
        return None
    for i in range(1, len(points)):
        tail = points[i:]
        fit = try_fit(tail)
        if fit is None:
            continue
        head = _fit_segments(points[:i], max_degree, min_extra, max_segments - 1)
        if head is not None:
            return head + [(tail, fit[0], fit[1])]
    return None


def detect_congruence_pattern(table: ScanTable, axis: str, max_period: int,
                              max_degree: int, min_extra: int = 1,
                              max_segments: int = 3) -> list[CongruenceFit]:
    """Exact fits per congruence class of the varying order, minimal period first.

    The table must vary one order with the other fixed.  Only finite rows
    participate; every returned fit reproduces all of its rows exactly.
    """
    if axis not in ("a", "b"):
        raise ValueError("axis must be 'a' or 'b'")
    rows = table.sorted().rows
    fixed = {r.order_b if axis == "a" else r.order_a for r in rows}
    if len(fixed) > 1:
        raise ValueError(f"the non-varying order takes several values: {sorted(fixed)}")
    variable = "order_a" if axis == "a" else "order_b"
    points_all = [((r.order_a if axis == "a" else r.order_b), r.value)
                  for r in rows if r.value is not None]
    if not points_all:
        return []
    for period in range(1, max_period + 1):
        fits: list[CongruenceFit] = []
        ok = True
        for residue in range(period):
            pts = [(o, v) for o, v in points_all if o % period == residue]
            if not pts:
                continue
            segs = _fit_segments(pts, max_degree, min_extra, max_segments)
            if segs is None:
                ok = False
                break
            for seg_pts, num, den in segs:
                fits.append(CongruenceFit(variable, period, residue, num, den,
                                          seg_pts[0][0], seg_pts[-1][0], len(seg_pts)))
        if ok:
            return fits
    return []
