from __future__ import annotations

import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sclcone.chains import (
    ChainParseError,
    FactorSpec,
    Word,
    homological_check,
    make_chain,
    normalize,
    parse_chain,
    reduce_exponent,
    render,
)
from conftest import chain, factors


def words_of(c):
    return {w: coeff for w, coeff in c.terms}


class TestParse:
    def test_two_words_unit_coefficients(self):
        c = chain("aba^-2b^-2 + ab", 0, 0)
        ws = words_of(c)
        assert ws == {
            Word((("a", 1), ("b", 1), ("a", -2), ("b", -2))): Fraction(1),
            Word((("a", 1), ("b", 1))): Fraction(1),
        }

    def test_commutator_shorthand(self):
        c = chain("[a,b]", 0, 0)
        assert words_of(c) == {Word((("a", 1), ("b", 1), ("a", -1), ("b", -1))): Fraction(1)}

    def test_rational_coefficient_and_uppercase_inverse(self):
        c = chain("1/2*aB", 0, 0)
        assert words_of(c) == {Word((("a", 1), ("b", -1))): Fraction(1, 2)}

    def test_unknown_generator(self):
        with pytest.raises(ChainParseError):
            chain("ac", 0, 0)

    def test_zero_exponent(self):
        with pytest.raises(ChainParseError):
            chain("a^0b", 0, 0)

    def test_malformed_exponent(self):
        with pytest.raises(ChainParseError):
            chain("a^^2", 0, 0)

    def test_malformed_rational(self):
        with pytest.raises(ChainParseError):
            chain("1/0*ab", 0, 0)

    def test_negative_term_sign(self):
        c = chain("ab - ba", 0, 0)
        assert words_of(c)[Word((("b", 1), ("a", 1)))] == Fraction(-1)

    def test_juxtaposed_same_generator_merges(self):
        c = chain("a a^2 b", 0, 0)
        assert words_of(c) == {Word((("a", 3), ("b", 1))): Fraction(1)}

    def test_nested_commutator_with_exponents(self):
        c = chain("[a^2,b]", 0, 0)
        assert words_of(c) == {Word((("a", 2), ("b", 1), ("a", -2), ("b", -1))): Fraction(1)}

    def test_factor_specs_validated(self):
        with pytest.raises(ValueError):
            FactorSpec("a", 1)
        with pytest.raises(ValueError):
            make_chain({}, (FactorSpec("a", 0), FactorSpec("a", 2)))


class TestReduceExponent:
    @pytest.mark.parametrize(
        "e,k,expected",
        [
            (3, 2, 1),
            (-1, 2, 1),  # tie broken positive
            (-2, 2, 0),
            (2, 4, 2),  # tie broken positive
            (-2, 4, 2),
            (7, 9, -2),
            (5, 0, 5),
        ],
    )
    def test_minimal_absolute_representative(self, e, k, expected):
        assert reduce_exponent(e, k) == expected


class TestNormalize:
    def test_reduction_cascade(self):
        # a^3 b a^-1 b^-1 at orders (2, 0): a^3 -> a, a^-1 -> a (tie positive)
        c = normalize(chain("a^3ba^-1b^-1", 2, 0))
        expected = Word((("a", 1), ("b", 1), ("a", 1), ("b", -1))).canonical()
        assert words_of(c) == {expected: Fraction(1)}

    def test_cyclic_merge(self):
        c = normalize(chain("abb^-1a", 0, 0))
        assert words_of(c) == {Word((("a", 2),)): Fraction(1)}

    def test_identity_word_dropped_silently(self):
        c = normalize(chain("a^2", 2, 0))
        assert c.is_empty

    def test_torsion_self_loop_dropped_with_warning(self):
        with pytest.warns(UserWarning):
            c = normalize(chain("a", 3, 0))
        assert c.is_empty

    def test_infinite_order_self_loop_kept(self):
        c = normalize(chain("a^2", 0, 0))
        assert words_of(c) == {Word((("a", 2),)): Fraction(1)}

    def test_negative_coefficient_becomes_inverse_word(self):
        c = normalize(chain("-ab", 0, 0))
        assert words_of(c) == {Word((("a", -1), ("b", -1))): Fraction(1)}

    def test_syllable_collapse_recascades(self):
        # at orders (2, 3): a^-2 vanishes, b and b^-2 merge to b^-1
        c = normalize(chain("aba^-2b^-2", 2, 3))
        assert words_of(c) == {Word((("a", 1), ("b", -1))): Fraction(1)}

    def test_inverse_pair_of_terms_keeps_both(self):
        c = normalize(chain("ab + B A", 0, 0))
        assert len(c.terms) == 2

    def test_idempotent_on_examples(self):
        for text, ka, kb in [
            ("aba^-2b^-2 + ab", 5, 7),
            ("a^3ba^-1b^-1", 2, 0),
            ("[a,b] - 2*ab", 4, 6),
            ("a^2 + a^-2", 0, 0),
        ]:
            c = normalize(chain(text, ka, kb))
            assert normalize(c) == c


class TestHomology:
    def test_finite_orders_always_trivial(self):
        assert homological_check(normalize(chain("ab", 2, 3)))

    def test_infinite_order_obstruction(self):
        assert not homological_check(normalize(chain("ab", 0, 3)))

    def test_balanced_exponents_trivial(self):
        assert homological_check(normalize(chain("a^2ba^-2b^-1", 0, 0)))

    def test_coefficients_weighted(self):
        # 2*(a b) - (a^2 b^2) has a-exponent sum 2*1 - 2 = 0
        assert homological_check(normalize(chain("2*ab - a^2b^2", 0, 0)))
        assert not homological_check(normalize(chain("3*ab - a^2b^2", 0, 0)))


class TestRender:
    def test_round_trip_examples(self):
        for text, ka, kb in [
            ("aba^-2b^-2 + ab", 0, 0),
            ("1/2*aB + 3*ba", 0, 0),
            ("[a,b]", 5, 7),
        ]:
            c = normalize(chain(text, ka, kb))
            assert parse_chain(render(c), c.factors) == c

    def test_empty_chain(self):
        c = make_chain({}, factors(0, 0))
        assert render(c) == "0"


# word syllable alphabets for the round-trip property
_sylls = st.lists(
    st.tuples(st.sampled_from("ab"), st.integers(-3, 3).filter(lambda e: e != 0)),
    min_size=1,
    max_size=6,
)


@given(st.lists(st.tuples(_sylls, st.fractions(min_value=Fraction(-3), max_value=Fraction(3))), max_size=4),
       st.sampled_from([(0, 0), (2, 3), (5, 7), (0, 4)]))
def test_normalize_idempotent_and_round_trip(raw_terms, orders):
    fs = factors(*orders)
    terms = {}
    for sylls, coeff in raw_terms:
        w = Word(tuple(sylls))
        terms[w] = terms.get(w, Fraction(0)) + coeff
    c = make_chain(terms, fs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        n = normalize(c)
        assert normalize(n) == n
    assert parse_chain(render(n), fs) == n
