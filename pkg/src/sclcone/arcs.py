"""Combinatorial encoding of the boundary 1-manifold: arcs, turns, pairing.

Each syllable of each word becomes an arc in its factor; a turn is an
ordered pair of arcs of the same factor and encodes a cut arc of a surface
piece (a diagonal turn of a self-loop arc encodes covering degree instead).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .chains import Chain, Word

Turn = tuple[int, int]
# Turn vectors are sparse mappings turn -> coefficient over one factor.
TurnVector = Mapping[Turn, Fraction]


@dataclass(frozen=True, order=True)
class Arc:
    index: int
    factor: str
    exponent: int
    word_index: int
    position: int
    is_self_loop: bool


class ArcSystem:
    """Immutable arc/turn data for a normalized chain."""

    def __init__(self, chain: Chain):
        self.chain = chain
        self.factors = chain.factors
        self.words: tuple[tuple[Word, Fraction], ...] = chain.terms
        arcs: list[Arc] = []
        for wi, (word, _coeff) in enumerate(self.words):
            self_loop = word.is_self_loop
            for pos, (gen, exp) in enumerate(word.syllables):
                arcs.append(Arc(len(arcs), gen, exp, wi, pos, self_loop))
        self.arcs: tuple[Arc, ...] = tuple(arcs)

        self._by_factor: dict[str, tuple[Arc, ...]] = {
            f.name: tuple(a for a in arcs if a.factor == f.name) for f in self.factors
        }
        # next/prev in cyclic word order, defined on non-self-loop arcs
        self._next: dict[int, int] = {}
        self._prev: dict[int, int] = {}
        offset = 0
        for word, _coeff in self.words:
            n = len(word.syllables)
            if n > 1:
                for pos in range(n):
                    a = offset + pos
                    b = offset + (pos + 1) % n
                    self._next[a] = b
                    self._prev[b] = a
            offset += n

        self._turns: dict[str, tuple[Turn, ...]] = {}
        for f in self.factors:
            ts: list[Turn] = []
            for a in self._by_factor[f.name]:
                for b in self._by_factor[f.name]:
                    if (a.is_self_loop or b.is_self_loop) and a.index != b.index:
                        continue
                    ts.append((a.index, b.index))
            self._turns[f.name] = tuple(sorted(ts))
        self._turn_sets = {name: frozenset(ts) for name, ts in self._turns.items()}

    # -- basic queries ------------------------------------------------------

    def factor_names(self) -> tuple[str, str]:
        return tuple(f.name for f in self.factors)

    def order_of(self, factor: str) -> int:
        return self.chain.factor(factor).order

    def arcs_of(self, factor: str) -> tuple[Arc, ...]:
        return self._by_factor[factor]

    def arc(self, index: int) -> Arc:
        return self.arcs[index]

    def turns(self, factor: str) -> tuple[Turn, ...]:
        return self._turns[factor]

    def has_turn(self, factor: str, turn: Turn) -> bool:
        return turn in self._turn_sets[factor]

    def next_arc(self, index: int) -> int:
        return self._next[index]

    def prev_arc(self, index: int) -> int:
        return self._prev[index]

    def coefficient(self, word_index: int) -> Fraction:
        return self.words[word_index][1]

    def is_self_diagonal(self, turn: Turn) -> bool:
        return turn[0] == turn[1] and self.arcs[turn[0]].is_self_loop

    def partner(self, factor: str, turn: Turn) -> tuple[str, Turn]:
        """Gluing partner of a turn with non-self-loop endpoints.

        The cut arc after arc tau and before arc tau' is seen from the other
        factor as the turn (prev(tau'), next(tau)).
        """
        tau, tau2 = turn
        if self.arcs[tau].is_self_loop or self.arcs[tau2].is_self_loop:
            raise ValueError(f"turn {turn} touches a self-loop arc and does not glue")
        other = self.arcs[self._prev[tau2]].factor
        return other, (self._prev[tau2], self._next[tau])

    # -- linear maps --------------------------------------------------------

    def boundary_map(self, factor: str, vec: TurnVector) -> dict[int, Fraction]:
        """Image under d(tau, tau') = tau - tau', indexed by arc."""
        out: dict[int, Fraction] = {a.index: Fraction(0) for a in self._by_factor[factor]}
        for (a, b), v in vec.items():
            self._check_turn(factor, (a, b))
            out[a] += Fraction(v)
            out[b] -= Fraction(v)
        return out

    def winding(self, factor: str, vec: TurnVector) -> Fraction:
        """Sum of (t_tau + t_tau')/2 over the vector's turns."""
        total = Fraction(0)
        for (a, b), v in vec.items():
            self._check_turn(factor, (a, b))
            total += Fraction(v) * Fraction(self.arcs[a].exponent + self.arcs[b].exponent, 2)
        return total

    def turn_norm(self, factor: str, vec: TurnVector) -> Fraction:
        """Number of cut arcs: every coordinate counts except self-loop diagonals."""
        total = Fraction(0)
        for turn, v in vec.items():
            self._check_turn(factor, turn)
            v = Fraction(v)
            if v < 0:
                raise ValueError(f"turn_norm requires a non-negative vector, got {v} at {turn}")
            if not self.is_self_diagonal(turn):
                total += v
        return total

    def _check_turn(self, factor: str, turn: Turn) -> None:
        if turn not in self._turn_sets[factor]:
            raise ValueError(f"{turn} is not a turn of factor {factor!r}")

    # -- debug dump ---------------------------------------------------------

    def to_json(self) -> dict:
        partners = {}
        for f in self.factors:
            for t in self._turns[f.name]:
                a, b = t
                if not (self.arcs[a].is_self_loop or self.arcs[b].is_self_loop):
                    other, pt = self.partner(f.name, t)
                    partners[f"{f.name}:{a},{b}"] = f"{other}:{pt[0]},{pt[1]}"
        return {
            "factors": [{"name": f.name, "order": f.order} for f in self.factors],
            "words": [
                {"syllables": list(w.syllables), "coefficient": str(c)} for w, c in self.words
            ],
            "arcs": [
                {
                    "index": a.index,
                    "factor": a.factor,
                    "exponent": a.exponent,
                    "word": a.word_index,
                    "position": a.position,
                    "self_loop": a.is_self_loop,
                }
                for a in self.arcs
            ],
            "turns": {f.name: [list(t) for t in self._turns[f.name]] for f in self.factors},
            "partners": partners,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def build_arc_system(chain: Chain) -> ArcSystem:
    return ArcSystem(chain)


# -- sparse vector helpers ---------------------------------------------------

def vec_add(u: TurnVector, v: TurnVector) -> dict[Turn, Fraction]:
    out = {k: Fraction(val) for k, val in u.items()}
    for k, val in v.items():
        out[k] = out.get(k, Fraction(0)) + Fraction(val)
    return {k: val for k, val in out.items() if val != 0}


def vec_scale(u: TurnVector, q) -> dict[Turn, Fraction]:
    q = Fraction(q)
    return {k: Fraction(val) * q for k, val in u.items() if Fraction(val) * q != 0}
