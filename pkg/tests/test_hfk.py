from math import gcd

import pytest
from hypothesis import given, strategies as st

from lensfloer.arith import LaurentPolynomial
from lensfloer.hfk import (
    AlexanderFormError,
    LSpaceAlex,
    hfk_from_alex,
    recognize_t2,
    tau_and_genus,
    torus_knot_alex,
    validate_lspace_alex,
)

P = LaurentPolynomial.parse
staircases = st.lists(st.integers(1, 40), min_size=0, max_size=8, unique=True).map(
    lambda xs: LSpaceAlex(tuple(sorted(xs))))


def oracle_torus_check(f, p, q):
    """(T^pq - 1)(T - 1) = f * T^g * (T^p - 1)(T^q - 1), evaluated at a few integers."""
    g = (p - 1) * (q - 1) // 2
    from fractions import Fraction
    for x in (2, 3, -2, 5):
        x = Fraction(x)
        lhs = (x ** (p * q) - 1) * (x - 1)
        rhs = f.evaluate(x) * x ** g * (x ** p - 1) * (x ** q - 1)
        if lhs != rhs:
            return False
    return True


def test_fixtures():
    assert set(hfk_from_alex(validate_lspace_alex(P("T - 1 + T^-1"))).generators) == {
        (1, 0), (0, -1), (-1, -2)}
    assert hfk_from_alex(validate_lspace_alex(P("T^3 - T^2 + 1 - T^-2 + T^-3"))).generators == (
        (3, 0), (2, -1), (0, -2), (-2, -5), (-3, -6))
    assert hfk_from_alex(validate_lspace_alex(P("1"))).generators == ((0, 0),)


def test_validator_rejections():
    for text, reason in [
        ("T + 1 + T^-1", "alternate"),
        ("2*T - 3 + 2*T^-1", "absolute value"),
        ("T^2 - T", "symmetric"),
        ("-T + 3 - T^-1", "absolute value"),
        ("0", "zero"),
        ("T - T^-1 + 1", "symmetric"),
        ("T^2 + T^-2", "constant"),
    ]:
        with pytest.raises(AlexanderFormError) as e:
            validate_lspace_alex(P(text))
        assert reason in e.value.reason
    with pytest.raises(AlexanderFormError):
        validate_lspace_alex(P("1/2"))
    with pytest.raises(AlexanderFormError, match="top coefficient"):
        validate_lspace_alex(P("-T^2 + T - 1 + T^-1 - T^-2"))


def test_tau():
    assert tau_and_genus(validate_lspace_alex(P("T - 1 + T^-1"))) == (1, 1)
    assert tau_and_genus(validate_lspace_alex(P("1"))) == (0, 0)
    for p in range(2, 13):
        for q in range(p + 1, 13):
            if gcd(p, q) == 1:
                g = (p - 1) * (q - 1) // 2
                assert tau_and_genus(validate_lspace_alex(torus_knot_alex(p, q))) == (g, g)


def test_torus_knot_alex():
    assert torus_knot_alex(2, 3) == P("T - 1 + T^-1")
    assert torus_knot_alex(3, 4) == P("T^3 - T^2 + 1 - T^-2 + T^-3")
    assert torus_knot_alex(2, 5) == P("T^2 - T + 1 - T^-1 + T^-2")
    for bad in [(2, 4), (1, 3), (6, 9)]:
        with pytest.raises(ValueError):
            torus_knot_alex(*bad)
    for p in range(2, 9):
        for q in range(p + 1, 12):
            if gcd(p, q) == 1:
                f = torus_knot_alex(p, q)
                assert oracle_torus_check(f, p, q)
                assert f == torus_knot_alex(q, p)


def test_recognize_t2():
    assert recognize_t2(P("T - 1 + T^-1")) == 1
    assert recognize_t2(P("T^2 - T + 1 - T^-1 + T^-2")) == 2
    with pytest.raises(AlexanderFormError, match="gap"):
        recognize_t2(P("T^3 - T^2 + 1 - T^-2 + T^-3"))
    for n in range(1, 51):
        assert recognize_t2(torus_knot_alex(2, 2 * n + 1)) == n
    for p in range(3, 8):
        for q in range(p + 1, 12):
            if gcd(p, q) == 1:
                with pytest.raises(AlexanderFormError):
                    recognize_t2(torus_knot_alex(p, q))


@given(staircases)
def test_euler_characteristic_and_symmetry(a):
    h = hfk_from_alex(a)
    assert h.euler_characteristic() == a.polynomial()
    assert h.is_symmetric()
    assert h.total_rank == 2 * a.k + 1
    assert h.generators[0] == (a.exponents[-1] if a.k else 0, 0)
    assert validate_lspace_alex(a.polynomial()) == a


def test_lspace_alex_validation():
    with pytest.raises(ValueError):
        LSpaceAlex((2, 1))
    with pytest.raises(ValueError):
        LSpaceAlex((0, 1))
    h = hfk_from_alex(LSpaceAlex((1,)))
    assert h.rank(1, 0) == 1 and h.rank(1, 1) == 0
