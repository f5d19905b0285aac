from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sclcone.arcs import build_arc_system, vec_add, vec_scale
from sclcone.chains import normalize
from conftest import chain


def system(text: str, ka: int, kb: int):
    return build_arc_system(normalize(chain(text, ka, kb)))


class TestConstruction:
    def test_abab_inverse(self):
        sys = system("abab^-1", 0, 0)
        a_arcs = sys.arcs_of("a")
        b_arcs = sys.arcs_of("b")
        assert [x.exponent for x in a_arcs] == [1, 1]
        assert sorted(x.exponent for x in b_arcs) == [-1, 1]
        assert len(sys.turns("a")) == 4

    def test_commutator_turns(self):
        sys = system("[a,b]", 0, 0)
        a_arcs = sys.arcs_of("a")
        assert sorted(x.exponent for x in a_arcs) == [-1, 1]
        i, j = (x.index for x in a_arcs)
        assert set(sys.turns("a")) == {(i, i), (i, j), (j, i), (j, j)}

    def test_self_loops_only_have_diagonals(self):
        sys = system("a^2 + a^-2", 0, 0)
        arcs = sys.arcs_of("a")
        assert all(x.is_self_loop for x in arcs)
        assert set(sys.turns("a")) == {(x.index, x.index) for x in arcs}
        assert sys.turns("b") == ()

    def test_next_prev_are_inverse_bijections(self):
        sys = system("aba^-2b^-2 + ab", 5, 7)
        for arc in sys.arcs:
            if not arc.is_self_loop:
                assert sys.prev_arc(sys.next_arc(arc.index)) == arc.index
                # words alternate factors
                assert sys.arc(sys.next_arc(arc.index)).factor != arc.factor

    def test_json_dump(self):
        sys = system("[a,b]", 3, 5)
        data = json.loads(sys.dumps())
        assert {a["factor"] for a in data["arcs"]} == {"a", "b"}
        assert data["factors"] == [{"name": "a", "order": 3}, {"name": "b", "order": 5}]


class TestPartner:
    def test_partner_involution(self):
        for text, ka, kb in [("[a,b]", 0, 0), ("aba^-2b^-2 + ab", 5, 7), ("abab^-1", 2, 3)]:
            sys = system(text, ka, kb)
            fa, fb = sys.factor_names()
            count = 0
            for t in sys.turns(fa):
                if sys.arc(t[0]).is_self_loop or sys.arc(t[1]).is_self_loop:
                    continue
                other, pt = sys.partner(fa, t)
                assert other == fb
                back_factor, back = sys.partner(fb, pt)
                assert back_factor == fa and back == t
                count += 1
            assert count > 0

    def test_partner_rejects_self_loop(self):
        sys = system("a^2 + a^-2", 0, 0)
        arc = sys.arcs_of("a")[0]
        with pytest.raises(ValueError):
            sys.partner("a", (arc.index, arc.index))


class TestLinearMaps:
    def test_boundary_basis_case(self):
        sys = system("[a,b]", 0, 0)
        i, j = (x.index for x in sys.arcs_of("a"))  # exponents +1, -1 in word order
        out = sys.boundary_map("a", {(i, j): Fraction(1)})
        assert out[i] == 1 and out[j] == -1

    def test_boundary_cycle_and_diagonal(self):
        sys = system("[a,b]", 0, 0)
        i, j = (x.index for x in sys.arcs_of("a"))
        assert all(v == 0 for v in sys.boundary_map("a", {(i, j): 1, (j, i): 1}).values())
        assert all(v == 0 for v in sys.boundary_map("a", {(i, i): 2}).values())

    def test_winding_half_integer(self):
        # single turn (a^2, a^-1) has winding (2 - 1)/2 = 1/2
        sys = system("a^2ba^-1b^-1", 0, 0)
        arcs = sys.arcs_of("a")
        two = next(x.index for x in arcs if x.exponent == 2)
        neg = next(x.index for x in arcs if x.exponent == -1)
        assert sys.winding("a", {(two, neg): 1}) == Fraction(1, 2)

    def test_winding_examples(self):
        sys = system("[a,b]", 0, 0)
        i = next(x.index for x in sys.arcs_of("a") if x.exponent == 1)
        j = next(x.index for x in sys.arcs_of("a") if x.exponent == -1)
        assert sys.winding("a", {(i, j): 1, (j, i): 1}) == 0
        assert sys.winding("a", {(i, i): 3}) == 3

    def test_norm_counts_regular_diagonals(self):
        sys = system("ab", 2, 3)
        (arc,) = sys.arcs_of("a")
        t = (arc.index, arc.index)
        assert sys.turn_norm("a", {t: Fraction(5)}) == 5

    def test_norm_exempts_self_loop_diagonals(self):
        sys = system("a^2 + a^-2", 0, 0)
        arc = sys.arcs_of("a")[0]
        assert sys.turn_norm("a", {(arc.index, arc.index): 5}) == 0

    def test_norm_rejects_negative(self):
        sys = system("ab", 2, 3)
        (arc,) = sys.arcs_of("a")
        with pytest.raises(ValueError):
            sys.turn_norm("a", {(arc.index, arc.index): Fraction(-1)})

    def test_unknown_turn_rejected(self):
        sys = system("ab", 2, 3)
        with pytest.raises(ValueError):
            sys.winding("a", {(7, 9): 1})


@given(st.integers(-4, 4), st.integers(-4, 4), st.fractions(min_value=Fraction(-3), max_value=Fraction(3)))
def test_linearity_of_boundary_and_winding(c1, c2, q):
    sys = system("aba^-2b^-2 + ab", 0, 0)
    ts = sys.turns("a")
    u = {ts[0]: Fraction(c1), ts[3]: Fraction(c2)}
    v = {ts[3]: Fraction(c2), ts[1]: Fraction(1)}
    s = vec_add(u, v)
    assert sys.winding("a", s) == sys.winding("a", u) + sys.winding("a", v)
    assert sys.winding("a", vec_scale(u, q)) == q * sys.winding("a", u)
    bu = sys.boundary_map("a", u)
    bv = sys.boundary_map("a", v)
    bs = sys.boundary_map("a", s)
    assert all(bs[k] == bu[k] + bv[k] for k in bs)


def test_integer_circulation_has_integer_winding():
    sys = system("a^2ba^-1b^-1", 0, 0)
    arcs = sys.arcs_of("a")
    two = next(x.index for x in arcs if x.exponent == 2)
    neg = next(x.index for x in arcs if x.exponent == -1)
    vec = {(two, neg): 2, (neg, two): 2, (neg, neg): 1}
    bal = sys.boundary_map("a", vec)
    assert all(v == 0 for v in bal.values())
    w = sys.winding("a", vec)
    assert w.denominator == 1
