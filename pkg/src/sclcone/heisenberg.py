"""Brute-force oracle for the discrete Heisenberg disk-vector example.

Cyclic words over {a, b, c} with prescribed transition counts (u copies of
ab, bc, ca and v copies of ac, cb, ba) are Eulerian circuits of a directed
multigraph; each word has a central exponent f(w) computed in the concrete
representation a = (1,0,0), b = (0,1,0), c = (-1,-1,0), for which
abc = id and [a,b] = z = (0,0,1).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .config import Limits, ResourceLimitError, default_limits

Triple = tuple[int, int, int]

IDENTITY: Triple = (0, 0, 0)

_REP: dict[str, Triple] = {
    "a": (1, 0, 0),
    "b": (0, 1, 0),
    "c": (-1, -1, 0),
}

_LETTERS = "abc"
# transition -> multiplicity class: True for the u-edges ab, bc, ca
_U_EDGES = {("a", "b"), ("b", "c"), ("c", "a")}
_V_EDGES = {("a", "c"), ("c", "b"), ("b", "a")}

DEFAULT_CAP = 8  # largest u + v enumerated without an explicit budget


def heis_mul(x: Triple, y: Triple) -> Triple:
    """(p,q,r)(p',q',r') = (p+p', q+q', r+r'+p q')."""
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])


def heis_inv(x: Triple) -> Triple:
    return (-x[0], -x[1], -x[2] + x[0] * x[1])


def word_exponent(word: str) -> int:
    """f(w) for a cyclic word with equal letter counts: the central coordinate."""
    counts = {ch: word.count(ch) for ch in _LETTERS}
    if len(set(counts.values())) != 1:
        raise ValueError(f"letters of {word!r} must appear equally often")
    acc = IDENTITY
    for ch in word:
        if ch not in _REP:
            raise ValueError(f"unexpected letter {ch!r}")
        acc = heis_mul(acc, _REP[ch])
    assert acc[0] == 0 and acc[1] == 0
    return acc[2]


def _canonical_rotation(word: str) -> str:
    return min(word[i:] + word[:i] for i in range(len(word)))


def enumerate_words(u: int, v: int, limits: Limits | None = None) -> set[str]:
    """All Eulerian circuits of the (u, v) transition multigraph, up to rotation."""
    if u < 0 or v < 0:
        raise ValueError("u and v must be non-negative")
    if u + v == 0:
        return set()
    limits = limits or default_limits()
    if u + v > DEFAULT_CAP:
        raise ResourceLimitError(
            f"u + v = {u + v} exceeds the enumeration cap {DEFAULT_CAP}"
        )
    remaining = {e: u for e in _U_EDGES} | {e: v for e in _V_EDGES}
    total = 3 * (u + v)
    out: set[str] = set()
    steps = 0

    # every word contains the letter 'a' (out-degree u + v >= 1), so rooting
    # the search at 'a' loses nothing; rotations are deduplicated at the end
    def rec(current: str, trail: list[str]) -> None:
        nonlocal steps
        steps += 1
        if steps > limits.max_nodes:
            raise ResourceLimitError("Eulerian circuit enumeration exceeded its budget")
        if len(trail) == total:
            # one edge is left; a circuit needs it to close back to 'a'
            if remaining.get((current, "a"), 0) == 1:
                out.add(_canonical_rotation("".join(trail)))
            return
        for nxt in _LETTERS:
            edge = (current, nxt)
            cnt = remaining.get(edge, 0)
            if cnt:
                remaining[edge] = cnt - 1
                trail.append(nxt)
                rec(nxt, trail)
                trail.pop()
                remaining[edge] = cnt

    rec("a", ["a"])
    return out


def suv_bruteforce(u: int, v: int, limits: Limits | None = None) -> set[int]:
    """{f(w) : w a cyclic word with the (u, v) transition counts}."""
    return {word_exponent(w) for w in enumerate_words(u, v, limits)}


def suv_formula(u: int, v: int) -> tuple[int, int] | None:
    """Closed-form integer interval [lo, hi] for S_{u,v}; None when no words exist."""
    if u < 0 or v < 0:
        raise ValueError("u and v must be non-negative")
    if u + v == 0:
        return None
    if u == v:
        return (-v * (v + 1) // 2, v * (v - 3) // 2)
    if u > v:
        return (-v * (v + 1) // 2, v * (v - 1) // 2)
    return (-u * (u + 1) // 2 - v, u * (u - 1) // 2 - v)


def suv_formula_set(u: int, v: int) -> set[int]:
    iv = suv_formula(u, v)
    if iv is None:
        return set()
    lo, hi = iv
    return set(range(lo, hi + 1))


def disk_region(m: int, n: int, u: int, v: int) -> bool:
    """True iff m(u+v) + n r = 0 has a solution r in S_{u,v}."""
    iv = suv_formula(u, v)
    if iv is None:
        return False
    lo, hi = iv
    if n == 0:
        return m * (u + v) == 0 and lo <= hi
    num = -m * (u + v)
    if num % n:
        return False
    r = num // n
    return lo <= r <= hi


def region_reference(u: int, v: int) -> bool:
    """The m/n = 1/2 region: 1 <= v <= u <= v^2 or u < v <= u^2, same parity."""
    if u % 2 != v % 2:
        return False
    return (1 <= v <= u <= v * v) or (u < v <= u * u)
