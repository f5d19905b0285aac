"""Exact scl computation: gluing program assembly and closed-form references.

The program maximizes sum(disk multipliers) - |v|/2 over glued pairs of
factor vectors with the chain's coefficients as covering rates; scl is
-(optimum)/2.  Disk columns come from a certified enumeration when the
factor is small, and are otherwise priced on demand with an exact min-cost
cycle oracle until no disk column can improve the optimum (which certifies
optimality over the full, infinite disk family).
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .arcs import ArcSystem, Turn, build_arc_system
from .chains import Chain, homological_check, normalize, render
from .config import Limits, ResourceLimitError, default_limits
from .disks import DiskOracle, IntVec, enumerate_disk_generators, seed_generators
from . import lp

_ENGINE_POOL_CAP = 256
_MAX_NEW_COLUMNS = 8


@dataclass
class GluingProgram:
    problem: lp.LpProblem
    sys: ArcSystem
    factor_names: tuple[str, str]
    turn_col: dict[tuple[str, Turn], int]
    disk_cols: dict[str, list[int]]
    pools: dict[str, list[IntVec]]
    glue_row: dict[Turn, int]          # keyed by first-factor turns
    glue_partner: dict[Turn, Turn]     # first-factor turn -> second-factor turn
    norm_row: dict[int, int]           # arc index -> row

    @property
    def num_vars(self) -> int:
        return self.problem.num_vars

    @property
    def num_rows(self) -> int:
        return self.problem.num_rows


def _norm_weight(sys: ArcSystem, turn: Turn) -> Fraction:
    return Fraction(0) if sys.is_self_diagonal(turn) else Fraction(1)


def build_program(sys: ArcSystem, pools: Mapping[str, list[IntVec]]) -> GluingProgram:
    """Assemble the LP for the given disk generator pools."""
    fa, fb = sys.factor_names()
    turn_col: dict[tuple[str, Turn], int] = {}
    objective: list[Fraction] = []
    for f in (fa, fb):
        for t in sys.turns(f):
            turn_col[(f, t)] = len(objective)
            objective.append(-_norm_weight(sys, t) / 2)
    disk_cols: dict[str, list[int]] = {fa: [], fb: []}
    disk_of_col: list[tuple[str, IntVec]] = []
    for f in (fa, fb):
        for d in pools.get(f, []):
            disk_cols[f].append(len(objective))
            disk_of_col.append((f, d))
            norm = sum(_norm_weight(sys, t) * m for t, m in d.items())
            objective.append(Fraction(1) - norm / 2)
    nvars = len(objective)

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    # boundary rows on the residual coordinates, per factor per regular arc
    for f in (fa, fb):
        for arc in sys.arcs_of(f):
            if arc.is_self_loop:
                continue
            row = [Fraction(0)] * nvars
            nonzero = False
            for t in sys.turns(f):
                c = Fraction(0)
                if t[0] == arc.index:
                    c += 1
                if t[1] == arc.index:
                    c -= 1
                if c:
                    row[turn_col[(f, t)]] = c
                    nonzero = True
            if nonzero:
                rows.append(row)
                rhs.append(Fraction(0))

    # gluing rows, one per first-factor turn with regular endpoints
    glue_row: dict[Turn, int] = {}
    glue_partner: dict[Turn, Turn] = {}
    for t in sys.turns(fa):
        if sys.arc(t[0]).is_self_loop or sys.arc(t[1]).is_self_loop:
            continue
        other, pt = sys.partner(fa, t)
        assert other == fb
        row = [Fraction(0)] * nvars
        row[turn_col[(fa, t)]] += 1
        row[turn_col[(fb, pt)]] -= 1
        for ci, (f, d) in zip(range(len(turn_col), nvars), disk_of_col):
            if f == fa:
                if d.get(t):
                    row[ci] += d[t]
            else:
                if d.get(pt):
                    row[ci] -= d[pt]
        glue_row[t] = len(rows)
        glue_partner[t] = pt
        rows.append(row)
        rhs.append(Fraction(0))

    # normalization rows: each arc is covered at its word's coefficient
    norm_row: dict[int, int] = {}
    for f in (fa, fb):
        for arc in sys.arcs_of(f):
            row = [Fraction(0)] * nvars
            outs = [t for t in sys.turns(f) if t[0] == arc.index]
            for t in outs:
                row[turn_col[(f, t)]] += 1
            for ci, (g, d) in zip(range(len(turn_col), nvars), disk_of_col):
                if g == f:
                    total = sum(d.get(t, 0) for t in outs)
                    if total:
                        row[ci] += total
            norm_row[arc.index] = len(rows)
            rows.append(row)
            rhs.append(sys.coefficient(arc.word_index))

    problem = lp.LpProblem(objective, rows, rhs)
    return GluingProgram(problem, sys, (fa, fb), turn_col, disk_cols,
                         {f: list(pools.get(f, [])) for f in (fa, fb)},
                         glue_row, glue_partner, norm_row)


def _pricing_costs(prog: GluingProgram, y: list[Fraction]) -> dict[str, dict[Turn, Fraction]]:
    """Edge costs so that a disk column's reduced cost is 1 - cost.vector."""
    sys = prog.sys
    fa, fb = prog.factor_names
    inv_partner = {pt: t for t, pt in prog.glue_partner.items()}
    costs: dict[str, dict[Turn, Fraction]] = {fa: {}, fb: {}}
    for t in sys.turns(fa):
        c = _norm_weight(sys, t) / 2 + y[prog.norm_row[t[0]]]
        if t in prog.glue_row:
            c += y[prog.glue_row[t]]
        costs[fa][t] = c
    for t in sys.turns(fb):
        c = _norm_weight(sys, t) / 2 + y[prog.norm_row[t[0]]]
        if t in inv_partner:
            c -= y[prog.glue_row[inv_partner[t]]]
        costs[fb][t] = c
    return costs


@dataclass
class SclResult:
    status: str  # "finite" | "infinite" | "empty"
    chain: Chain
    value: Fraction | None = None
    primal: dict[str, dict[Turn, Fraction]] = field(default_factory=dict)
    disk_usage: dict[str, list[tuple[IntVec, Fraction]]] = field(default_factory=dict)
    dual: list[Fraction] | None = None
    certificate_ok: bool = False
    pricing_minima: dict[str, Fraction | None] = field(default_factory=dict)
    generators: dict[str, dict] = field(default_factory=dict)
    lp_stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        orders = [f.order for f in self.chain.factors]
        scl = None
        if self.status in ("finite", "empty") and self.value is not None:
            scl = {"num": self.value.numerator, "den": self.value.denominator}
        return {
            "chain": render(self.chain),
            "orders": orders,
            "status": self.status,
            "scl": scl,
            "generators": self.generators,
            "lp": self.lp_stats,
            "certificate_ok": self.certificate_ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def compute_scl(chain: Chain, limits: Limits | None = None) -> SclResult:
    """Exact scl of a rational chain, with primal/dual certificates."""
    limits = limits or default_limits()
    t0 = time.perf_counter()
    norm = normalize(chain)
    if norm.is_empty:
        return SclResult(status="empty", chain=norm, value=Fraction(0), certificate_ok=True,
                         timings={"total_ms": 0})
    if not homological_check(norm):
        return SclResult(status="infinite", chain=norm,
                         timings={"total_ms": int((time.perf_counter() - t0) * 1000)})

    sys = build_arc_system(norm)
    fa, fb = sys.factor_names()
    pools: dict[str, list[IntVec]] = {}
    gen_meta: dict[str, dict] = {}
    needs_pricing: list[str] = []
    for f in (fa, fb):
        try:
            gs = enumerate_disk_generators(sys, f, limits=limits, prune=False,
                                           budget=limits.small_enum_nodes)
            if len(gs.generators) > _ENGINE_POOL_CAP:
                raise ResourceLimitError("enumerated pool too large for the master LP")
            pools[f] = gs.generators
            gen_meta[f] = {"bound": gs.bound}
        except ResourceLimitError:
            # fall back to column generation against the implicit disk family
            pools[f] = seed_generators(sys, f)
            gen_meta[f] = {"bound": "column-generation"}
            needs_pricing.append(f)

    oracles = {f: DiskOracle(sys, f, limits=limits) for f in needs_pricing}
    total_pivots = 0
    solves = 0
    prog = build_program(sys, pools)
    outcome = lp.solve(prog.problem, limits)
    solves += 1
    total_pivots += outcome.pivots
    minima: dict[str, Fraction | None] = {}
    for _round in range(limits.max_pricing_rounds):
        if outcome.status != "optimal":
            raise RuntimeError(f"gluing program unexpectedly {outcome.status}")
        if not needs_pricing:
            break
        costs = _pricing_costs(prog, outcome.y)
        improved = False
        for f in needs_pricing:
            best, cands = oracles[f].price(costs[f], Fraction(1), _MAX_NEW_COLUMNS)
            minima[f] = best
            existing = {tuple(sorted(d.items())) for d in pools[f]}
            for cand in cands:
                key = tuple(sorted(cand.vector.items()))
                if key not in existing:
                    pools[f].append(cand.vector)
                    existing.add(key)
                    improved = True
        if not improved:
            break
        if len(pools[fa]) + len(pools[fb]) > limits.max_generators:
            raise ResourceLimitError("disk column pool exceeded max_generators")
        prog = build_program(sys, pools)
        outcome = lp.solve(prog.problem, limits)
        solves += 1
        total_pivots += outcome.pivots
    else:
        raise ResourceLimitError("column generation did not converge within max_pricing_rounds")

    opt = outcome.value
    assert opt is not None and opt <= 0
    value = -opt / 2

    primal: dict[str, dict[Turn, Fraction]] = {fa: {}, fb: {}}
    disk_usage: dict[str, list[tuple[IntVec, Fraction]]] = {fa: [], fb: []}
    for f in (fa, fb):
        vec: dict[Turn, Fraction] = {}
        for t in sys.turns(f):
            v = outcome.x[prog.turn_col[(f, t)]]
            if v:
                vec[t] = v
        for ci, d in zip(prog.disk_cols[f], prog.pools[f]):
            s = outcome.x[ci]
            if s:
                disk_usage[f].append((d, s))
                for t, m in d.items():
                    vec[t] = vec.get(t, Fraction(0)) + s * m
        primal[f] = vec

    cert_ok = lp.check_certificate(prog.problem, outcome)
    for f in (fa, fb):
        m = minima.get(f)
        if m is not None and m < 1:
            cert_ok = False
        gen_meta[f]["count"] = len(pools[f])

    return SclResult(
        status="finite",
        chain=norm,
        value=value,
        primal=primal,
        disk_usage=disk_usage,
        dual=outcome.y,
        certificate_ok=cert_ok,
        pricing_minima=minima,
        generators=gen_meta,
        lp_stats={
            "vars": prog.num_vars,
            "constraints": prog.num_rows,
            "pivots": total_pivots,
            "solves": solves,
        },
        timings={"total_ms": int((time.perf_counter() - t0) * 1000)},
    )


def kappa(sys: ArcSystem, factor: str, vec: Mapping[Turn, Fraction],
          generators: list[IntVec], limits: Limits | None = None) -> Fraction:
    """Max total disk multiplier subtractable from vec within the factor cone."""
    vec = {t: Fraction(v) for t, v in vec.items() if v}
    for t, v in vec.items():
        if v < 0:
            raise ValueError("kappa requires a vector in the non-negative cone")
    bal = sys.boundary_map(factor, vec)
    if any(v != 0 for v in bal.values()):
        raise ValueError("kappa requires a circulation (boundary zero)")
    if not generators:
        return Fraction(0)
    support = sorted(set(vec) | {t for g in generators for t in g})
    n_gen = len(generators)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, t in enumerate(support):
        row = [Fraction(g.get(t, 0)) for g in generators]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(len(support))]
        rows.append(row)
        rhs.append(vec.get(t, Fraction(0)))
    objective = [Fraction(1)] * n_gen + [Fraction(0)] * len(support)
    outcome = lp.solve(lp.LpProblem(objective, rows, rhs), limits)
    if outcome.status != "optimal":
        raise RuntimeError(f"kappa LP unexpectedly {outcome.status}")
    return outcome.value


# ---------------------------------------------------------------------------
# Closed-form references
# ---------------------------------------------------------------------------

def formula_product(i: int, j: int, orders: tuple[int, int]) -> Fraction | None:
    """scl(a^i b^j); None encodes an infinite value (nonzero real homology)."""
    if i == 0 or j == 0:
        raise ValueError("exponents must be nonzero")
    ka, kb = orders
    if ka == 0 or kb == 0:
        return None
    na = ka // gcd(abs(i), ka)
    nb = kb // gcd(abs(j), kb)
    return Fraction(1, 2) * (1 - Fraction(1, na) - Fraction(1, nb))


def formula_commutator(orders: tuple[int, int]) -> Fraction:
    """scl([a,b]) = 1/2 - 1/k, k the minimum order (0 treated as infinity)."""
    finite = [k for k in orders if k != 0]
    if not finite:
        return Fraction(1, 2)
    return Fraction(1, 2) - Fraction(1, min(finite))


def formula_self_product(p: int, q: int) -> Fraction | None:
    """scl(a^p t a^q t^-1) over Z * Z; None encodes infinite."""
    if p == 0 or q == 0:
        raise ValueError("exponents must be nonzero")
    return Fraction(1, 2) if q == -p else None


WALKER_WORDS = {
    "F1": "aba^-2b^-2 + ab",
    "F2": "aba^-3b^-3",
    "F3": "a^2ba^-1b^-1a^-2bab^-1",
    "F4": "aba^2b^2a^3b^3a^-5b^-5",
    "counterexample": "aba^-2b^-2a^2b^2a^-1b^-1",
}


def walker_reference(family: str, orders: tuple[int, int]) -> Fraction | None:
    """Reference value for a Walker family, or None outside its stated range."""
    o1, o2 = orders
    if o1 == 0 or o2 == 0:
        return None
    m = min(o1, o2)
    if family == "F1":
        if m < 2:
            return None
        top = Fraction(2, 3) if m % 2 == 0 else Fraction(1, 2)
        return Fraction(2, 3) - top / m
    if family == "F2":
        if m < 7:
            return None
        return Fraction(3, 4) - Fraction(1, o1) - Fraction(1, o2)
    if family == "F3":
        if m < 3:
            return None
        return Fraction(1, 2) - Fraction(2 if o1 % 2 == 0 else 1, o1)
    if family == "F4":
        if m < 6:
            return None
        return 1 - Fraction(1, 2 * o1) - Fraction(1, 2 * o2)
    if family == "counterexample":
        if not (o1 > 10 and o2 > 2 * o1):
            return None
        r = o1 % 6
        if r in (1, 3, 5):
            return 1 - Fraction(3 * (o1 - 1), o1 * (o1 + 1))
        if r == 0:
            return 1 - Fraction(3, o1)
        if r == 2:
            return 1 - Fraction(15, 5 * o1 + 8)
        return 1 - Fraction(3, o1 + 2)
    raise ValueError(f"unknown family {family!r}")
