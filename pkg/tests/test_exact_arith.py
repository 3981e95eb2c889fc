from fractions import Fraction
from math import gcd

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from oracles import bezout_scan, mod1
from seifert_cover.exact_arith import (
    BezoutPair,
    bezout,
    ext_gcd,
    format_rational,
    parse_rational,
    reduce_mod1,
    to_rational,
)
from seifert_cover.torus_homology import SeifertInvariant

i64 = st.integers(min_value=-(2**63), max_value=2**63 - 1)


def test_ext_gcd_conventions():
    assert ext_gcd(0, 0) == (0, 0, 0)
    assert ext_gcd(1, 0) == (1, 1, 0)


@pytest.mark.parametrize("a,b", [(10, 6), (6, 10), (-10, 6), (0, 7), (7, 0), (0, -7), (-4, -6)])
def test_ext_gcd_identity(a, b):
    g, x, y = ext_gcd(a, b)
    assert g == gcd(a, b)
    assert a * x + b * y == g


@given(i64, i64)
def test_ext_gcd_property(a, b):
    g, x, y = ext_gcd(a, b)
    assert g >= 0
    assert a * x + b * y == g
    if (a, b) != (0, 0):
        assert g > 0 and a % g == 0 and b % g == 0
        assert g == gcd(a, b)


@pytest.mark.parametrize(
    "alpha,beta,expected",
    [(1, 0, (0, 1)), (2, 1, (1, 1)), (5, 3, (3, 2))],
)
def test_bezout_examples(alpha, beta, expected):
    assert bezout(SeifertInvariant(alpha, beta)) == BezoutPair(*expected)
    assert bezout_scan(alpha, beta) == [expected]


def test_bezout_exhaustive_against_scan():
    for alpha in range(1, 51):
        for beta in range(-60, 61):
            if gcd(alpha, beta) != 1:
                continue
            scanned = bezout_scan(alpha, beta)
            assert len(scanned) == 1
            pair = bezout(SeifertInvariant(alpha, beta))
            assert (pair.alpha_prime, pair.beta_prime) == scanned[0]


@given(
    st.integers(min_value=1, max_value=10_000).flatmap(
        lambda a: st.tuples(st.just(a), st.integers(-10**6, 10**6).filter(lambda b: gcd(a, b) == 1))
    )
)
def test_bezout_identity_property(ab):
    alpha, beta = ab
    pair = bezout(SeifertInvariant(alpha, beta))
    assert alpha * pair.beta_prime - pair.alpha_prime * beta == 1
    assert 0 <= pair.alpha_prime < alpha


def test_bezout_huge_invariant():
    alpha, beta = 2**127 - 1, 3**80
    pair = bezout(SeifertInvariant(alpha, beta))
    assert pair.satisfies(alpha, beta)


@pytest.mark.parametrize("x,expected", [("0", "0"), ("-3/2", "1/2"), ("7/3", "1/3"), ("-4", "0")])
def test_reduce_mod1_examples(x, expected):
    assert reduce_mod1(parse_rational(x)) == parse_rational(expected)


rationals = st.fractions(max_denominator=10**6)


@given(rationals, st.integers(-10**9, 10**9))
def test_reduce_mod1_properties(x, n):
    r = reduce_mod1(x)
    assert 0 <= r < 1
    assert r == mod1(x)
    assert reduce_mod1(r) == r
    assert reduce_mod1(x + n) == r
    assert (to_rational(x) - r).denominator == 1


@given(rationals, rationals)
def test_rational_arithmetic_is_exact(a, b):
    qa, qb = to_rational(a), to_rational(b)
    assert (qa + qb) - qb == qa
    assert Fraction(int(qa.numerator), int(qa.denominator)) == a


@pytest.mark.parametrize(
    "text,value",
    [("3", mpq(3)), ("-5/2", mpq(-5, 2)), ("6/4", mpq(3, 2)), ("+1/3", mpq(1, 3)), ("0/5", mpq(0))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "1e3", "a/b", "1/-2", "", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(rationals)
def test_format_parse_round_trip(x):
    text = format_rational(to_rational(x))
    assert parse_rational(text) == x
    assert ("/" in text) == (x.denominator != 1)


def test_format_examples():
    assert format_rational(mpq(3)) == "3"
    assert format_rational(mpq(-5, 2)) == "-5/2"
