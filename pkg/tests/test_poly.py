from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mfkit import ONE, ZERO, Monomial, Polynomial, leading_split, monomial_count
from mfkit.errors import UndefinedSplit
from mfkit.poly import pack_exponents

from helpers import monomial

P = Polynomial.parse

coeffs = st.one_of(
    st.integers(-5, 5).filter(bool),
    st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool),
)
keys = st.dictionaries(st.sampled_from("wxyz"), st.integers(0, 5), max_size=4).map(
    lambda d: pack_exponents({v: e for v, e in d.items() if e})
)
polys = st.dictionaries(keys, coeffs, max_size=6).map(Polynomial)


def test_add_identity_and_disjoint():
    assert P("x^2+1") + ZERO == P("x^2+1")
    assert str(P("xy") + P("x^2z")) == "x^2z + xy"


def test_add_cancels_terms():
    r = P("x^3 - y^3") + P("y^3")
    assert r == P("x^3")
    assert monomial_count(r) == 1


def test_mul_examples():
    assert P("x+y") * ZERO == ZERO
    assert P("x") * P("x^2") == P("x^3")
    prod = P("xy+x^2z+yz^2") * P("x^2+z^2")
    assert prod == P("x^3y + x^4z + x^2yz^2 + xyz^2 + x^2z^3 + yz^4")
    assert monomial_count(prod) == 6


def test_neg_and_sub():
    assert -P("x") == P("-x")
    assert P("x^2+1") - P("x^2+1") == ZERO
    assert -P("xy+x^2z") == P("-xy - x^2z")


def test_monomial_count():
    assert monomial_count(ZERO) == 0
    assert monomial_count(P("xy+x^2z+yz^2")) == 3
    assert monomial_count(P("xy + (xy+x^2z+yz^2)(x^2+z^2)")) == 7


def test_canonical_rendering():
    assert str(P("1 + x^2")) == "x^2 + 1"
    assert str(P("y + x")) == "x + y"
    assert str(P("-1/2x^2y + 3")) == "-1/2x^2y + 3"
    assert str(ZERO) == "0"
    assert str(P("z^3 + xy")) == "z^3 + xy"  # higher degree first


def test_equality_with_scalars():
    assert P("3") == 3
    assert P("1/2") == Fraction(1, 2)
    assert ONE == 1
    assert P("x") != P("y")


def test_coefficients_stay_exact():
    p = P("1/3x") * P("3y")
    assert p == P("xy")
    assert isinstance(p.terms[next(iter(p.terms))], int)
    with pytest.raises(TypeError):
        Polynomial.const(0.5)


def test_monomial_invariants():
    with pytest.raises(ValueError):
        Monomial(0, pack_exponents({"x": 1}))
    assert Monomial(0).is_zero()
    assert Monomial.from_exponents(2, {"x": 1, "y": 0}).exponents == {"x": 1}


def test_exponent_overflow_is_refused():
    big = Polynomial.var("x", 2**30)
    with pytest.raises(OverflowError):
        big * big


@pytest.mark.parametrize(
    "text, g, h",
    [
        ("xy", "x", "y"),
        ("x^2z", "x^2", "z"),
        ("yz^2", "y", "z^2"),
        ("y^2z", "y^2", "z"),
        ("5", "5", "1"),
        ("-3xz", "-3x", "z"),
        ("x", "x", "1"),
    ],
)
def test_leading_split(text, g, h):
    got = leading_split(monomial(text))
    assert (got[0].to_poly(), got[1].to_poly()) == (P(g), P(h))


@pytest.mark.parametrize("text, g, h", [("x^2", "x", "x"), ("z^2", "z", "z"), ("y^2", "y", "y"), ("x^3", "x", "x^2")])
def test_leading_split_single_variable_power(text, g, h):
    got = leading_split(monomial(text))
    assert (got[0].to_poly(), got[1].to_poly()) == (P(g), P(h))


def test_leading_split_zero():
    with pytest.raises(UndefinedSplit):
        leading_split(Monomial(0))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys)
def test_render_parse_round_trip(a):
    assert P(str(a)).terms == a.terms


@given(polys)
def test_hash_agrees_with_equality(a):
    b = Polynomial(dict(reversed(list(a.terms.items()))))
    assert a == b and hash(a) == hash(b)


@given(st.dictionaries(st.sampled_from("xyz"), st.integers(1, 5), min_size=1, max_size=3), coeffs)
def test_leading_split_product(exps, c):
    m = Monomial.from_exponents(c, exps)
    g, h = leading_split(m)
    assert (g * h) == m
