"""Rational chains of cyclic words over a two-factor free product of cyclic groups.

Grammar accepted by :func:`parse_chain`:

    chain    ::=  ['-'] term (('+' | '-') term)*
    term     ::=  [coeff '*'] word
    coeff    ::=  INT | INT '/' INT
    word     ::=  (atom)+
    atom     ::=  letter ['^' ['-'] INT]  |  '[' word ',' word ']'

A lowercase letter is a generator, the corresponding uppercase letter its
inverse, and ``[x,y]`` expands to the commutator ``x y x^-1 y^-1``.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class ChainError(ValueError):
    pass


class ChainParseError(ChainError):
    pass


@dataclass(frozen=True, order=True)
class FactorSpec:
    """One cyclic factor: order 0 encodes the infinite cyclic group."""

    name: str
    order: int

    def __post_init__(self) -> None:
        if not (len(self.name) == 1 and self.name.isalpha() and self.name.islower()):
            raise ChainError(f"factor name must be a single lowercase letter, got {self.name!r}")
        if self.order != 0 and self.order < 2:
            raise ChainError(f"factor order must be 0 or >= 2, got {self.order}")

    @property
    def infinite(self) -> bool:
        return self.order == 0


Syllable = tuple[str, int]


@dataclass(frozen=True, order=True)
class Word:
    """Cyclic word as a tuple of (generator, nonzero exponent) syllables."""

    syllables: tuple[Syllable, ...]

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    @property
    def is_self_loop(self) -> bool:
        return len(self.syllables) == 1

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def rotated(self, i: int) -> "Word":
        n = len(self.syllables)
        if n == 0:
            return self
        i %= n
        return Word(self.syllables[i:] + self.syllables[:i])

    def canonical(self) -> "Word":
        """Lexicographically minimal cyclic rotation."""
        if len(self.syllables) <= 1:
            return self
        return min((self.rotated(i) for i in range(len(self.syllables))), key=lambda w: w.syllables)

    def exponent_sum(self, generator: str) -> int:
        return sum(e for g, e in self.syllables if g == generator)


@dataclass(frozen=True)
class Chain:
    """Finite rational combination of cyclic words, term order canonical."""

    terms: tuple[tuple[Word, Fraction], ...]
    factors: tuple[FactorSpec, FactorSpec]

    def __post_init__(self) -> None:
        if len(self.factors) != 2 or self.factors[0].name == self.factors[1].name:
            raise ChainError("exactly two factors with distinct names are required")

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Word, Fraction]:
        return dict(self.terms)

    def factor(self, name: str) -> FactorSpec:
        for f in self.factors:
            if f.name == name:
                return f
        raise ChainError(f"unknown factor {name!r}")

    def scaled(self, q: Fraction) -> "Chain":
        q = Fraction(q)
        if q == 0:
            return Chain((), self.factors)
        return make_chain({w: c * q for w, c in self.terms}, self.factors)


def make_chain(terms: Mapping[Word, Fraction] | Iterable[tuple[Word, Fraction]], factors) -> Chain:
    merged: dict[Word, Fraction] = {}
    items = terms.items() if isinstance(terms, Mapping) else terms
    for word, coeff in items:
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        merged[word] = merged.get(word, Fraction(0)) + coeff
    cleaned = tuple(sorted((w, c) for w, c in merged.items() if c != 0))
    return Chain(cleaned, tuple(factors))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_COEFF_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*\*\s*")
_INT_RE = re.compile(r"[+-]?\d+")


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level +/-, leaving exponent signs (after ^) alone."""
    terms: list[tuple[int, str]] = []
    sign, buf = 1, []
    prev_significant = ""
    for ch in text:
        if ch in "+-" and prev_significant != "^":
            if "".join(buf).strip():
                terms.append((sign, "".join(buf)))
            elif terms:
                raise ChainParseError(f"empty term in {text!r}")
            buf = []
            sign = 1 if ch == "+" else -1
        else:
            buf.append(ch)
        if not ch.isspace():
            prev_significant = ch
    last = "".join(buf)
    if last.strip():
        terms.append((sign, last))
    elif text.strip():
        raise ChainParseError(f"trailing separator in {text!r}")
    return terms


def _reduce_adjacent(syllables: list[Syllable]) -> list[Syllable]:
    """Merge adjacent same-generator syllables (free reduction, not cyclic)."""
    out: list[Syllable] = []
    for g, e in syllables:
        if out and out[-1][0] == g:
            e_sum = out[-1][1] + e
            out.pop()
            if e_sum != 0:
                out.append((g, e_sum))
        else:
            out.append((g, e))
    return out


class _WordParser:
    def __init__(self, text: str, generators: dict[str, str]):
        self.text = text
        self.pos = 0
        self.generators = generators  # letter (either case) -> generator name

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_word(self, stop: str = "") -> list[Syllable]:
        syllables: list[Syllable] = []
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                break
            if ch == "[":
                self.pos += 1
                u = self.parse_word(stop=",")
                if self.peek() != ",":
                    raise ChainParseError(f"expected ',' in commutator at {self.text!r}")
                self.pos += 1
                v = self.parse_word(stop="]")
                if self.peek() != "]":
                    raise ChainParseError(f"unclosed commutator in {self.text!r}")
                self.pos += 1
                u_inv = [(g, -e) for g, e in reversed(u)]
                v_inv = [(g, -e) for g, e in reversed(v)]
                syllables.extend(u + v + u_inv + v_inv)
            elif ch.isalpha():
                self.pos += 1
                if ch not in self.generators:
                    raise ChainParseError(f"unknown generator {ch!r}")
                gen = self.generators[ch]
                exp = 1 if ch.islower() else -1
                if self.peek() == "^":
                    self.pos += 1
                    m = _INT_RE.match(self.text[self.pos:].lstrip())
                    if not m:
                        raise ChainParseError(f"malformed exponent after '^' in {self.text!r}")
                    self.pos = self.pos + len(self.text[self.pos:]) - len(self.text[self.pos:].lstrip()) + m.end()
                    k = int(m.group())
                    if k == 0:
                        raise ChainParseError("zero exponent")
                    exp *= k
                syllables.append((gen, exp))
            else:
                raise ChainParseError(f"unexpected character {ch!r} in {self.text!r}")
        return _reduce_adjacent(syllables)


def parse_chain(text: str, factors: tuple[FactorSpec, FactorSpec]) -> Chain:
    """Parse the chain grammar; result is syntactically valid, not normalized."""
    factors = tuple(factors)
    if len(factors) != 2:
        raise ChainParseError("exactly two factors are required")
    if text.strip() in ("", "0"):
        return make_chain({}, factors)
    generators: dict[str, str] = {}
    for f in factors:
        generators[f.name] = f.name
        generators[f.name.upper()] = f.name

    terms: list[tuple[Word, Fraction]] = []
    for sign, raw in _split_terms(text):
        coeff = Fraction(sign)
        m = _COEFF_RE.match(raw)
        body = raw
        if m:
            num, den = m.group(1), m.group(2)
            try:
                coeff *= Fraction(int(num), int(den) if den is not None else 1)
            except ZeroDivisionError as exc:
                raise ChainParseError(f"malformed rational in {raw!r}") from exc
            body = raw[m.end():]
        elif "*" in raw.split("^")[0].split("[")[0]:
            raise ChainParseError(f"malformed rational coefficient in {raw!r}")
        parser = _WordParser(body, generators)
        syllables = parser.parse_word()
        if parser.pos < len(body) and body[parser.pos:].strip():
            raise ChainParseError(f"trailing garbage in {raw!r}")
        if coeff == 0:
            continue
        if not syllables:
            continue  # term reduced to the identity
        terms.append((Word(tuple(syllables)), coeff))
    return make_chain(terms, factors)


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def reduce_exponent(exponent: int, order: int) -> int:
    """Representative of minimal absolute value mod order, ties positive."""
    if order == 0:
        return exponent
    r = exponent % order
    if 2 * r > order:
        r -= order
    return r


def _normalize_word(word: Word, by_name: Mapping[str, FactorSpec]) -> Word:
    sylls = list(word.syllables)
    while True:
        reduced = []
        for g, e in sylls:
            r = reduce_exponent(e, by_name[g].order)
            if r != 0:
                reduced.append((g, r))
        reduced = _reduce_adjacent(reduced)
        # cyclic boundary merge
        while len(reduced) >= 2 and reduced[0][0] == reduced[-1][0]:
            g = reduced[0][0]
            e = reduced[0][1] + reduced[-1][1]
            reduced = ([(g, e)] if e != 0 else []) + reduced[1:-1]
        if reduced == sylls:
            break
        sylls = reduced
    return Word(tuple(sylls))


def normalize(chain: Chain) -> Chain:
    """Reduce exponents mod orders, merge/drop syllables, canonicalize terms.

    Torsion single-syllable words vanish in B1^H and are dropped (with a
    warning); negative coefficients are moved onto inverse words.
    """
    by_name = {f.name: f for f in chain.factors}
    out: dict[Word, Fraction] = {}
    for word, coeff in chain.terms:
        w = _normalize_word(word, by_name)
        if len(w) == 0:
            continue
        if w.is_self_loop and not by_name[w.syllables[0][0]].infinite:
            warnings.warn(f"dropping torsion term {w.syllables!r} (trivial in B1^H)", stacklevel=2)
            continue
        if coeff < 0:
            w = _normalize_word(w.inverse(), by_name)
            coeff = -coeff
        w = w.canonical()
        out[w] = out.get(w, Fraction(0)) + coeff
    return make_chain(out, chain.factors)


def homological_check(chain: Chain) -> bool:
    """True iff the chain is trivial in H1(G; R).

    Only infinite-order factors constrain anything; finite factors have
    vanishing real homology.
    """
    for f in chain.factors:
        if not f.infinite:
            continue
        total = sum((c * w.exponent_sum(f.name) for w, c in chain.terms), Fraction(0))
        if total != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_word(word: Word) -> str:
    parts = []
    for g, e in word.syllables:
        parts.append(g if e == 1 else f"{g}^{e}")
    return "".join(parts)


def render(chain: Chain) -> str:
    if chain.is_empty:
        return "0"
    parts = []
    for word, coeff in chain.terms:
        prefix = "" if coeff == 1 else f"{coeff}*"
        parts.append(prefix + render_word(word))
    return " + ".join(parts)
