"""Disk vectors and finite generator sets for conv(D) + V per factor.

A disk vector over a factor of order k is a nonzero non-negative integer
turn vector with zero boundary, connected support, and total winding in k*Z
(winding exactly 0 when k = 0).

The central device is the product graph on states (arc, winding residue):
a turn (a, b) steps (a, r) -> (b, r + t_a).  Closed walks in the product
graph are exactly the disk vectors, and any disk decomposes as one simple
product cycle plus an element of the cone V = {v >= 0, boundary 0}.  Simple
product cycles therefore form a certified generator family: they are
enumerated outright for small instances and priced on demand (min-cost
cycle) for large ones.  For k = 0 the graph is banded; the band comes from
a proved mass bound on minimal-mass optima (see _k0_mass_bound).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .arcs import ArcSystem, Turn
from .config import Limits, ResourceLimitError, default_limits
from . import lp

IntVec = dict[Turn, int]


@dataclass(frozen=True)
class SimpleLoop:
    """Directed simple cycle in a factor's turn graph; each edge used once."""

    edges: tuple[Turn, ...]
    winding: int

    def vector(self) -> IntVec:
        return {e: 1 for e in self.edges}

    @property
    def mass(self) -> int:
        return len(self.edges)


@dataclass
class DiskGeneratorSet:
    generators: list[IntVec]
    factor: str
    order: int
    bound: str
    minimal: bool

    def __len__(self) -> int:
        return len(self.generators)


def _vec_key(vec: Mapping[Turn, int]) -> tuple:
    return tuple(sorted((t, int(m)) for t, m in vec.items() if m))


# ---------------------------------------------------------------------------
# Simple loops of the base turn graph
# ---------------------------------------------------------------------------

def simple_loops(sys: ArcSystem, factor: str) -> list[SimpleLoop]:
    """All directed simple cycles, including length-1 diagonal turns."""
    turns = sys.turns(factor)
    vertices = sorted({a for a, _ in turns} | {b for _, b in turns})
    out_edges: dict[int, list[int]] = {v: [] for v in vertices}
    for a, b in turns:
        if a != b:
            out_edges[a].append(b)
    for v in out_edges:
        out_edges[v].sort()

    def wind(edges: Sequence[Turn]) -> int:
        total = sum(sys.arc(a).exponent + sys.arc(b).exponent for a, b in edges)
        assert total % 2 == 0
        return total // 2

    loops: list[SimpleLoop] = []
    for v in vertices:
        if (v, v) in set(turns):
            loops.append(SimpleLoop(((v, v),), sys.arc(v).exponent))
    # simple cycles of length >= 2, rooted at their minimal vertex
    for root in vertices:
        stack = [(root, [root])]
        while stack:
            u, path = stack.pop()
            for w in out_edges[u]:
                if w == root and len(path) >= 2:
                    edges = tuple((path[i], path[(i + 1) % len(path)]) for i in range(len(path)))
                    loops.append(SimpleLoop(edges, wind(edges)))
                elif w > root and w not in path:
                    stack.append((w, path + [w]))
    loops.sort(key=lambda l: (len(l.edges), l.edges))
    return loops


def loop_decompose(sys: ArcSystem, factor: str, vec: Mapping[Turn, int]) -> list[tuple[tuple[Turn, ...], int]]:
    """Greedy decomposition of an integer circulation into directed cycles."""
    work = {t: int(m) for t, m in vec.items() if m}
    if any(m < 0 for m in work.values()):
        raise ValueError("decomposition requires a non-negative vector")
    bal = sys.boundary_map(factor, {t: Fraction(m) for t, m in work.items()})
    if any(v != 0 for v in bal.values()):
        raise ValueError("decomposition requires a circulation (boundary zero)")
    pieces: list[tuple[tuple[Turn, ...], int]] = []
    while work:
        start = min(work)
        path = [start]
        seen = {start[0]: 0}
        u = start[1]
        while u not in seen:
            seen[u] = len(path)
            nxt = min(t for t in work if t[0] == u)
            path.append(nxt)
            u = nxt[1]
        cycle = tuple(path[seen[u]:])
        mult = min(work[t] for t in cycle)
        pieces.append((cycle, mult))
        for t in cycle:
            work[t] -= mult
            if work[t] == 0:
                del work[t]
    return pieces


# ---------------------------------------------------------------------------
# Disk membership
# ---------------------------------------------------------------------------

def _support_connected(vec: Mapping[Turn, int]) -> bool:
    edges = [t for t, m in vec.items() if m]
    if not edges:
        return False
    verts = {v for e in edges for v in e}
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = set()
    stack = [next(iter(verts))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v] - seen)
    return seen == verts


def disk_membership(sys: ArcSystem, factor: str, vec: Mapping[Turn, int], order: int | None = None) -> bool:
    """True iff vec encodes a disk over the given factor order."""
    k = sys.order_of(factor) if order is None else order
    if not vec:
        return False
    for t, m in vec.items():
        if int(m) != m:
            raise ValueError(f"disk membership requires integer vectors, got {m} at {t}")
        if m < 0:
            return False
    clean = {t: int(m) for t, m in vec.items() if m}
    if not clean:
        return False
    bal = sys.boundary_map(factor, {t: Fraction(m) for t, m in clean.items()})
    if any(v != 0 for v in bal.values()):
        return False
    if not _support_connected(clean):
        return False
    w = sys.winding(factor, {t: Fraction(m) for t, m in clean.items()})
    if w.denominator != 1:
        return False
    w = int(w)
    return w == 0 if k == 0 else w % k == 0


# ---------------------------------------------------------------------------
# Product graph
# ---------------------------------------------------------------------------

class _ProductGraph:
    """States (arc, winding residue); finite residues for k >= 2, a band for k = 0."""

    def __init__(self, sys: ArcSystem, factor: str, k: int, band: int = 0):
        self.k = k
        self.band = band
        arcs = [a.index for a in sys.arcs_of(factor)]
        layers = range(k) if k >= 2 else range(-band, band + 1)
        self.nodes: list[tuple[int, int]] = [(a, r) for a in sorted(arcs) for r in layers]
        self.node_id = {node: i for i, node in enumerate(self.nodes)}
        self.turns = sys.turns(factor)
        self.turn_id = {t: i for i, t in enumerate(self.turns)}
        exp = {a.index: a.exponent for a in sys.arcs_of(factor)}
        # adjacency: node -> list of (target node, turn index)
        self.adj: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        for ti, (a, b) in enumerate(self.turns):
            for r in layers:
                r2 = (r + exp[a]) % k if k >= 2 else r + exp[a]
                if k == 0 and abs(r2) > band:
                    continue
                self.adj[self.node_id[(a, r)]].append((self.node_id[(b, r2)], ti))

    def layer_zero_sources(self) -> list[int]:
        return [i for i, (_, r) in enumerate(self.nodes) if r == 0]


def _k0_mass_bound(sys: ArcSystem, factor: str) -> tuple[int, int]:
    """(mass bound, band) covering every minimal-mass disk optimum at k = 0.

    In a cancel-free loop decomposition, zero-winding loops appear at most
    once, and if T is the one-signed winding mass then T <= |SL| * L where
    L is the largest lcm of an opposite-signed winding pair (otherwise both
    maximal loops exceed their cancellation threshold).  Margins cover the
    bridged constructions used to witness negative cone directions.
    """
    loops = simple_loops(sys, factor)
    arcs = sys.arcs_of(factor)
    if not loops or not arcs:
        return 0, 0
    t_max = max(abs(a.exponent) for a in arcs)
    pos = [l.winding for l in loops if l.winding > 0]
    neg = [-l.winding for l in loops if l.winding < 0]
    big_lcm = max((lcm(p, q) for p in pos for q in neg), default=0)
    w_max = max((abs(l.winding) for l in loops), default=0)
    mass = len(arcs) * (len(loops) + 2 * len(loops) * big_lcm) + 4 * w_max + 8
    band = t_max * mass + t_max + 2
    return mass, band


# ---------------------------------------------------------------------------
# Generator enumeration
# ---------------------------------------------------------------------------

def _enumerate_product_cycles(sys: ArcSystem, factor: str, k: int, limits: Limits,
                              budget: int | None = None) -> list[IntVec]:
    """All simple product cycles up to layer shift, as base turn vectors.

    Start nodes are restricted to layer 0: shifting a cycle so its minimal
    node sits at layer 0 preserves the base vector, so each vector is found.
    """
    graph = _ProductGraph(sys, factor, k)
    budget = budget if budget is not None else limits.max_nodes
    steps = 0
    found: dict[tuple, IntVec] = {}
    order_key = graph.nodes  # (arc, layer); DFS visits only nodes > start
    for s in graph.layer_zero_sources():
        s_key = order_key[s]

        def dfs(u: int, trail: list[int], on_path: set[int]) -> None:
            nonlocal steps
            steps += 1
            if steps > budget:
                raise ResourceLimitError(
                    f"product-cycle enumeration exceeded {budget} steps for factor {factor!r}"
                )
            for v, ti in graph.adj[u]:
                if v == s:
                    vec: IntVec = {}
                    for t in trail + [ti]:
                        turn = graph.turns[t]
                        vec[turn] = vec.get(turn, 0) + 1
                    found.setdefault(_vec_key(vec), vec)
                elif order_key[v] > s_key and v not in on_path:
                    on_path.add(v)
                    dfs(v, trail + [ti], on_path)
                    on_path.remove(v)

        dfs(s, [], {s})
        if len(found) > limits.max_generators:
            raise ResourceLimitError("generator pool exceeded max_generators")
    return sorted(found.values(), key=_vec_key)


def _hilbert_basis_k0(sys: ArcSystem, factor: str, limits: Limits, budget: int | None = None) -> list[IntVec]:
    """Minimal nonzero solutions of {boundary = 0, winding = 0, v >= 0 integer}.

    Contejean-Devie completion over the turn coordinates; rows are the arc
    balance equations plus the doubled winding functional (kept integral).
    """
    turns = list(sys.turns(factor))
    if not turns:
        return []
    arcs = [a.index for a in sys.arcs_of(factor)]
    arc_pos = {a: i for i, a in enumerate(arcs)}
    cols: list[tuple[int, ...]] = []
    for a, b in turns:
        col = [0] * (len(arcs) + 1)
        col[arc_pos[a]] += 1
        col[arc_pos[b]] -= 1
        col[-1] = sys.arc(a).exponent + sys.arc(b).exponent  # doubled winding
        cols.append(tuple(col))
    dim = len(arcs) + 1
    budget = budget if budget is not None else limits.max_nodes

    def mval(v: tuple[int, ...]) -> tuple[int, ...]:
        out = [0] * dim
        for i, m in enumerate(v):
            if m:
                for r in range(dim):
                    out[r] += m * cols[i][r]
        return tuple(out)

    def dominated(v: tuple[int, ...], basis: list[tuple[int, ...]]) -> bool:
        return any(all(v[i] >= b[i] for i in range(len(v))) for b in basis)

    n = len(turns)
    frontier = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    basis: list[tuple[int, ...]] = []
    steps = 0
    while frontier:
        new: dict[tuple[int, ...], None] = {}
        for v in frontier:
            steps += 1
            if steps > budget:
                raise ResourceLimitError("Hilbert basis search exceeded its budget")
            mv = mval(v)
            if all(x == 0 for x in mv):
                if not dominated(v, basis):
                    basis.append(v)
                continue
            for i in range(n):
                # Contejean-Devie descent criterion
                dot = sum(mv[r] * cols[i][r] for r in range(dim))
                if dot < 0:
                    w = tuple(v[j] + (1 if j == i else 0) for j in range(n))
                    if not dominated(w, basis):
                        new[w] = None
        frontier = [v for v in new if not dominated(v, basis)]
    vecs = [{turns[i]: v[i] for i in range(n) if v[i]} for v in basis]
    return sorted(vecs, key=_vec_key)


def _k0_generators(sys: ArcSystem, factor: str, limits: Limits, budget: int | None = None) -> list[IntVec]:
    """Disk generators for an infinite-cyclic factor.

    Every disk is an N-combination of Hilbert basis elements; a repeated
    element can be subtracted while preserving disk-hood, so 0/1
    combinations with connected support generate conv(D) + V.
    """
    basis = _hilbert_basis_k0(sys, factor, limits, budget)
    if len(basis) > limits.max_hilbert:
        raise ResourceLimitError(
            f"order-0 Hilbert basis has {len(basis)} elements (cap {limits.max_hilbert})"
        )
    out: dict[tuple, IntVec] = {}

    def supp(vec: IntVec) -> frozenset[Turn]:
        return frozenset(t for t, m in vec.items() if m)

    def extend(idx: int, acc: IntVec, support: frozenset[Turn]) -> None:
        if acc and _support_connected(acc):
            out.setdefault(_vec_key(acc), dict(acc))
        for j in range(idx, len(basis)):
            sj = supp(basis[j])
            if acc and sj <= support:
                continue  # adding nothing new to the support: always redundant
            merged = dict(acc)
            for t, m in basis[j].items():
                merged[t] = merged.get(t, 0) + m
            extend(j + 1, merged, support | sj)

    extend(0, {}, frozenset())
    return sorted(out.values(), key=_vec_key)


def enumerate_disk_generators(sys: ArcSystem, factor: str, order: int | None = None,
                              limits: Limits | None = None, prune: bool = True,
                              budget: int | None = None) -> DiskGeneratorSet:
    """Finite set D' of disk vectors with conv(D') + V = conv(D) + V.

    Raises ResourceLimitError when the search exceeds its budget; callers
    must treat that as "unable to certify", never as an empty answer.
    """
    limits = limits or default_limits()
    k = sys.order_of(factor) if order is None else order
    if k != 0 and k < 2:
        raise ValueError(f"order must be 0 or >= 2, got {k}")
    if not sys.arcs_of(factor):
        return DiskGeneratorSet([], factor, k, "empty", True)
    if k == 0:
        gens = _k0_generators(sys, factor, limits, budget)
        bound = "hilbert-0/1"
    else:
        gens = _enumerate_product_cycles(sys, factor, k, limits, budget)
        bound = f"product-cycles(mod {k})"
    minimal = False
    if prune:
        gens = prune_generators(sys, factor, gens, limits=limits)
        minimal = True
    return DiskGeneratorSet(gens, factor, k, bound, minimal)


# ---------------------------------------------------------------------------
# Pruning and hull membership
# ---------------------------------------------------------------------------

def in_generated_hull(sys: ArcSystem, factor: str, generators: Sequence[Mapping[Turn, int]],
                      target: Mapping[Turn, int], limits: Limits | None = None) -> bool:
    """Exact test: target in conv(generators) + V (V = nonneg circulations)."""
    gens = [g for g in generators]
    if not gens:
        return False
    support = sorted({t for g in gens for t in g} | set(target))
    idx = {t: i for i, t in enumerate(support)}
    n_lam, n_slack = len(gens), len(support)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for t in support:
        row = [Fraction(g.get(t, 0)) for g in gens] + [
            Fraction(1) if j == idx[t] else Fraction(0) for j in range(n_slack)
        ]
        rows.append(row)
        rhs.append(Fraction(target.get(t, 0)))
    rows.append([Fraction(1)] * n_lam + [Fraction(0)] * n_slack)
    rhs.append(Fraction(1))
    problem = lp.LpProblem([Fraction(0)] * (n_lam + n_slack), rows, rhs)
    return lp.solve(problem, limits).status == "optimal"


def minimal_elements(generators: Sequence[Mapping[Turn, int]]) -> list[IntVec]:
    """Coordinatewise-minimal subset; sound for circulations since the
    difference of dominated circulations lies in the cone V."""
    vecs = [dict(g) for g in generators]
    vecs.sort(key=lambda g: (sum(g.values()), _vec_key(g)))
    kept: list[IntVec] = []
    for g in vecs:
        if not any(all(g.get(t, 0) >= m for t, m in h.items()) for h in kept):
            kept.append(g)
    return kept


def prune_generators(sys: ArcSystem, factor: str, generators: Sequence[Mapping[Turn, int]],
                     limits: Limits | None = None) -> list[IntVec]:
    """Drop every generator lying in conv(of the others) + V."""
    live: list[IntVec] = sorted(minimal_elements(generators), key=_vec_key)
    keep = [True] * len(live)
    for i in range(len(live)):
        others = [live[j] for j in range(len(live)) if j != i and keep[j]]
        if others and in_generated_hull(sys, factor, others, live[i], limits):
            keep[i] = False
    return [g for g, k in zip(live, keep) if k]


def brute_force_generators(sys: ArcSystem, factor: str, order: int | None = None,
                           bound: int = 0, limits: Limits | None = None,
                           prune: bool = True) -> list[IntVec]:
    """All disk vectors of coordinate sum <= bound (pruned by default).

    Exhaustive scan with a sound cut: an edge unit lowers the total arc
    imbalance by at most 2, so branches whose deficit exceeds twice the
    remaining budget cannot close up.  The oracle for the enumerator.
    """
    limits = limits or default_limits()
    k = sys.order_of(factor) if order is None else order
    turns = list(sys.turns(factor))
    found: list[IntVec] = []
    steps = 0
    imbalance: dict[int, int] = {a.index: 0 for a in sys.arcs_of(factor)}

    def rec(i: int, remaining: int, acc: IntVec) -> None:
        nonlocal steps
        steps += 1
        if steps > limits.max_nodes:
            raise ResourceLimitError("brute-force generator scan exceeded its budget")
        deficit = sum(abs(v) for v in imbalance.values())
        if deficit > 2 * remaining:
            return
        if i == len(turns):
            if acc and deficit == 0 and disk_membership(sys, factor, acc, k):
                found.append(dict(acc))
            return
        t = turns[i]
        rec(i + 1, remaining, acc)
        for m in range(1, remaining + 1):
            acc[t] = m
            imbalance[t[0]] += 1
            imbalance[t[1]] -= 1
            rec(i + 1, remaining - m, acc)
        imbalance[t[0]] -= remaining
        imbalance[t[1]] += remaining
        acc.pop(t, None)

    rec(0, bound, {})
    if prune:
        return prune_generators(sys, factor, found, limits=limits)
    return sorted(found, key=_vec_key)


# ---------------------------------------------------------------------------
# Integer hull of a bounded rational polytope
# ---------------------------------------------------------------------------

def _point_in_hull(point: Sequence[Fraction], vertices: Sequence[Sequence[Fraction]],
                   limits: Limits | None = None) -> bool:
    dim = len(point)
    n = len(vertices)
    rows = [[Fraction(v[d]) for v in vertices] for d in range(dim)]
    rows.append([Fraction(1)] * n)
    rhs = [Fraction(point[d]) for d in range(dim)] + [Fraction(1)]
    problem = lp.LpProblem([Fraction(0)] * n, rows, rhs)
    return lp.solve(problem, limits).status == "optimal"


def integer_hull(vertices: Sequence[Sequence], limits: Limits | None = None,
                 max_dim: int = 8) -> list[tuple[int, ...]]:
    """Vertices of the convex hull of the integer points inside conv(vertices)."""
    limits = limits or default_limits()
    verts = [[Fraction(x) for x in v] for v in vertices]
    if not verts:
        return []
    dim = len(verts[0])
    if any(len(v) != dim for v in verts):
        raise ValueError("vertices of mixed dimension")
    if dim > max_dim:
        raise ValueError(f"dimension {dim} exceeds the cap {max_dim}")
    import math

    lo = [math.ceil(min(v[d] for v in verts)) for d in range(dim)]
    hi = [math.floor(max(v[d] for v in verts)) for d in range(dim)]
    total = 1
    for d in range(dim):
        total *= max(0, hi[d] - lo[d] + 1)
    if total > limits.max_nodes:
        raise ResourceLimitError(f"{total} lattice candidates exceed the budget")

    def boxes(d: int, acc: list[int]) -> Iterable[tuple[int, ...]]:
        if d == dim:
            yield tuple(acc)
            return
        for x in range(lo[d], hi[d] + 1):
            yield from boxes(d + 1, acc + [x])

    inside = [p for p in boxes(0, []) if _point_in_hull([Fraction(x) for x in p], verts, limits)]
    hull_vertices = []
    for i, p in enumerate(inside):
        others = [[Fraction(x) for x in q] for j, q in enumerate(inside) if j != i]
        if not others or not _point_in_hull([Fraction(x) for x in p], others, limits):
            hull_vertices.append(p)
    return sorted(hull_vertices)


# ---------------------------------------------------------------------------
# Pricing oracle: exact min-cost disk for a linear functional
# ---------------------------------------------------------------------------

@dataclass
class PricedDisk:
    cost: Fraction
    vector: IntVec


class DiskOracle:
    """Minimizes a rational linear functional over all disk vectors of a factor.

    With no negative product cycle the minimum over disks equals the minimum
    over simple product cycles (non-negative cycle costs make composites at
    least as expensive as their cheapest piece); a negative cycle means the
    infimum is -infinity and the cycle itself is returned as a witness.
    """

    def __init__(self, sys: ArcSystem, factor: str, order: int | None = None,
                 limits: Limits | None = None):
        self.sys = sys
        self.factor = factor
        self.limits = limits or default_limits()
        self.k = sys.order_of(factor) if order is None else order
        if self.k == 0:
            _, band = _k0_mass_bound(sys, factor)
        else:
            band = 0
        self.graph = _ProductGraph(sys, factor, self.k, band)
        if len(self.graph.nodes) > self.limits.max_nodes:
            raise ResourceLimitError(
                f"pricing graph for factor {factor!r} has {len(self.graph.nodes)} states"
            )

    def _scaled_costs(self, cost: Mapping[Turn, Fraction]) -> tuple[list[int], int]:
        denom = 1
        for t in self.graph.turns:
            denom = lcm(denom, Fraction(cost.get(t, 0)).denominator)
        w = [int(Fraction(cost.get(t, 0)) * denom) for t in self.graph.turns]
        return w, denom

    def _cycle_vector(self, turn_trail: Sequence[int]) -> IntVec:
        vec: IntVec = {}
        for ti in turn_trail:
            t = self.graph.turns[ti]
            vec[t] = vec.get(t, 0) + 1
        return vec

    def _negative_cycle(self, w: list[int]) -> list[int] | None:
        """Bellman-Ford from a virtual source; returns a turn trail or None."""
        g = self.graph
        n = len(g.nodes)
        dist = [0] * n
        pred: list[tuple[int, int] | None] = [None] * n
        touched = -1
        for it in range(n):
            changed = False
            for u in range(n):
                du = dist[u]
                for v, ti in g.adj[u]:
                    nd = du + w[ti]
                    if nd < dist[v]:
                        dist[v] = nd
                        pred[v] = (u, ti)
                        changed = True
                        touched = v
            if not changed:
                return None
        # walk back n steps to land inside a predecessor cycle, then collect it
        v = touched
        for _ in range(n):
            v = pred[v][0]
        trail: list[int] = []
        u = v
        while True:
            pu, ti = pred[u]
            trail.append(ti)
            u = pu
            if u == v:
                break
        trail.reverse()
        return trail

    def _potentials(self, w: list[int]) -> list[int]:
        g = self.graph
        n = len(g.nodes)
        dist = [0] * n
        for _ in range(n):
            changed = False
            for u in range(n):
                du = dist[u]
                for v, ti in g.adj[u]:
                    nd = du + w[ti]
                    if nd < dist[v]:
                        dist[v] = nd
                        changed = True
            if not changed:
                break
        return dist

    def price(self, cost: Mapping[Turn, Fraction], cutoff: Fraction,
              max_candidates: int = 8) -> tuple[Fraction | None, list[PricedDisk]]:
        """(exact min over disks or None if no disk exists, disks cheaper than cutoff).

        A None minimum with candidates present means a negative cycle was
        found (infimum unbounded below); the candidate still witnesses
        improvement.
        """
        g = self.graph
        if not g.nodes:
            return None, []
        w, denom = self._scaled_costs(cost)
        neg = self._negative_cycle(w)
        if neg is not None:
            vec = self._cycle_vector(neg)
            exact = sum(Fraction(cost.get(t, 0)) * m for t, m in vec.items())
            assert exact < 0
            return None, [PricedDisk(exact, vec)]

        h = self._potentials(w)
        scaled_cutoff_num = cutoff * denom
        best: Fraction | None = None
        cands: dict[tuple, PricedDisk] = {}
        INF = None
        for s in g.layer_zero_sources():
            # Dijkstra on reweighted costs from s
            n = len(g.nodes)
            dist: list[int | None] = [INF] * n
            pred: list[tuple[int, int] | None] = [None] * n
            dist[s] = 0
            pq = [(0, s)]
            while pq:
                d, u = heapq.heappop(pq)
                if dist[u] is None or d > dist[u]:
                    continue
                for v, ti in g.adj[u]:
                    if v == s:
                        continue
                    nd = d + w[ti] + h[u] - h[v]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        pred[v] = (u, ti)
                        heapq.heappush(pq, (nd, v))
            # close cycles back into s
            for u in range(n):
                if dist[u] is None:
                    continue
                for v, ti in g.adj[u]:
                    if v != s:
                        continue
                    cyc_cost = dist[u] + w[ti] + h[u] - h[s]  # true cycle cost, scaled
                    value = Fraction(cyc_cost, denom)
                    if best is None or value < best:
                        best = value
                    if value < cutoff and len(cands) < max_candidates:
                        trail = [ti]
                        x = u
                        while x != s:
                            px, pt = pred[x]
                            trail.append(pt)
                            x = px
                        trail.reverse()
                        vec = self._cycle_vector(trail)
                        cands.setdefault(_vec_key(vec), PricedDisk(value, vec))
        return best, sorted(cands.values(), key=lambda c: (c.cost, _vec_key(c.vector)))


def seed_generators(sys: ArcSystem, factor: str, order: int | None = None) -> list[IntVec]:
    """Cheap starting disks: lifted base loops and balanced loop pairs."""
    k = sys.order_of(factor) if order is None else order
    loops = simple_loops(sys, factor)
    out: dict[tuple, IntVec] = {}
    for l in loops:
        if k == 0:
            if l.winding == 0:
                out.setdefault(_vec_key(l.vector()), l.vector())
            continue
        m = k // gcd(abs(l.winding), k)
        vec = {e: m for e in l.edges}
        out.setdefault(_vec_key(vec), vec)
    if k == 0:
        for pos_loop in loops:
            if pos_loop.winding <= 0:
                continue
            for neg_loop in loops:
                if neg_loop.winding >= 0:
                    continue
                pos_verts = {v for e in pos_loop.edges for v in e}
                neg_verts = {v for e in neg_loop.edges for v in e}
                if not (pos_verts & neg_verts):
                    continue
                g = gcd(pos_loop.winding, -neg_loop.winding)
                x, y = (-neg_loop.winding) // g, pos_loop.winding // g
                vec: IntVec = {}
                for e in pos_loop.edges:
                    vec[e] = vec.get(e, 0) + x
                for e in neg_loop.edges:
                    vec[e] = vec.get(e, 0) + y
                out.setdefault(_vec_key(vec), vec)
    return sorted(out.values(), key=_vec_key)
