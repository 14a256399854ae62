from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lensfloer.arith import (
    LaurentPolynomial,
    NonIntegralCoefficient,
    NotInvertible,
    ResidueClass,
    mod_inverse,
    poly_is_alternating_pm1,
    units,
)

P = LaurentPolynomial.parse
rationals = st.fractions(max_denominator=10**6)
polys = st.dictionaries(st.integers(-8, 8), st.integers(-3, 3), max_size=8).map(LaurentPolynomial)


def test_mod_inverse_examples():
    assert mod_inverse(1, 7) == 1
    assert mod_inverse(17, 32) == ResidueClass(32, 17)
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)


@given(st.integers(1, 10**6), st.integers(-10**9, 10**9))
def test_mod_inverse_property(p, a):
    from math import gcd
    if gcd(a, p) != 1:
        with pytest.raises(NotInvertible):
            mod_inverse(a, p)
    else:
        assert (int(mod_inverse(a, p)) * a - 1) % p == 0


def test_units():
    assert units(1) == []
    assert units(6) == [1, 5]
    assert [int(u) for u in units(12)] == [1, 5, 7, 11]
    with pytest.raises(ValueError):
        units(0)


def test_residue_class_reduces():
    r = ResidueClass(5, -3)
    assert r.value == 2 and r == 7 and repr(r) == "[2]_5"


@given(rationals, rationals)
def test_rational_round_trip(a, b):
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a


def test_alternating_examples():
    assert poly_is_alternating_pm1(P("1"))
    assert poly_is_alternating_pm1(P("T - 1 + T^-1"))
    assert not poly_is_alternating_pm1(P("T + 1 + T^-1"))
    assert not poly_is_alternating_pm1(P("2*T - 1"))
    assert poly_is_alternating_pm1(P("0"))
    with pytest.raises(NonIntegralCoefficient):
        poly_is_alternating_pm1(LaurentPolynomial({0: Fraction(1, 2)}))


@given(polys, st.integers(-20, 20))
def test_alternating_invariant_under_mirror_and_shift(f, k):
    v = poly_is_alternating_pm1(f)
    assert poly_is_alternating_pm1(f.mirror()) == v
    assert poly_is_alternating_pm1(f.shift(k)) == v


@given(polys)
def test_format_parse_round_trip(f):
    assert P(f.format()) == f


def test_format_text():
    f = LaurentPolynomial({3: 1, 2: -1, 0: 1, -2: -1, -3: 1})
    assert f.format() == "T^3 - T^2 + 1 - T^-2 + T^-3"
    assert P("T^3 - T^2 + 1 - T^-2 + T^-3") == f
    assert P("3/2*T^2 - T") == LaurentPolynomial({2: Fraction(3, 2), 1: -1})
    assert str(LaurentPolynomial()) == "0"


@pytest.mark.parametrize("bad", ["", "T^", "T T", "1 +", "x"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        P(bad)


@given(polys, polys, polys)
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


def test_no_stored_zeros_and_queries():
    f = LaurentPolynomial({1: 1, 0: 0, -1: 1})
    assert list(f) == [-1, 1]
    assert f.is_symmetric() and f.is_integral()
    assert f.evaluate(1) == 2
    assert f.dense() == [(-1, 1), (0, 0), (1, 1)]
    assert f.min_degree == -1 and f.max_degree == 1
    with pytest.raises(ValueError):
        LaurentPolynomial().max_degree


@given(polys)
def test_evaluate_at_one_is_coefficient_sum(f):
    assert f.evaluate(1) == sum(c for _, c in f.terms())
