from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from lensfloer import kernels
from lensfloer.dinvariants import (
    DCache,
    LensSpace,
    conjugate_label,
    d_lens,
    d_neg_lens,
    d_table,
)


def oracle_d_neg(p, q, i):
    """Direct transcription of the recursion, no shared code."""
    if p == 1:
        return Fraction(0)
    return Fraction(p * q - (2 * i + 1 - p - q) ** 2, 4 * p * q) - oracle_d_neg(q, p % q, i % q)


def coprime_pairs(pmax, pmin=2):
    return [(p, q) for p in range(pmin, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


def test_hand_values():
    assert d_neg_lens(1, 1, 0) == 0
    assert d_neg_lens(1, 0, 0) == 0
    assert (d_neg_lens(2, 1, 0), d_neg_lens(2, 1, 1)) == (Fraction(-1, 4), Fraction(1, 4))
    assert [d_neg_lens(3, 2, i) for i in range(3)] == [Fraction(-1, 6), Fraction(-1, 6), Fraction(1, 2)]
    assert d_lens(2, 1, 0) == Fraction(1, 4)
    assert d_lens(1, 1, 0) == 0


@pytest.mark.parametrize("args", [(4, 2, 0), (3, 1, 3), (3, 1, -1), (0, 0, 0), (2, 0, 0), (2, 3, 0)])
def test_bad_arguments(args):
    with pytest.raises(ValueError):
        d_neg_lens(*args)


def test_tables():
    assert d_table(LensSpace(2, 1)).values == (Fraction(1, 4), Fraction(-1, 4))
    assert d_table(LensSpace(3, 2)).values == (Fraction(1, 6), Fraction(1, 6), Fraction(-1, 2))
    assert d_table(LensSpace(1, 0)).values == (Fraction(0),)


def test_lens_space_validation():
    for bad in [(0, 0), (4, 2), (3, 3), (3, 0), (1, 2)]:
        with pytest.raises(ValueError):
            LensSpace(*bad)
    assert str(LensSpace(11, 9)) == "L(11,9)"


def test_table_matches_recursion_oracle():
    for p, q in coprime_pairs(40):
        assert list(d_table(LensSpace(p, q)).values) == [-oracle_d_neg(p, q, i) for i in range(p)]


def test_closed_form_q1():
    for p in range(1, 101):
        for i in range(p):
            assert d_lens(p, 1 if p > 1 else 0, i) == Fraction((2 * i - p) ** 2 - p, 4 * p)


def test_conjugation_examples():
    assert [conjugate_label(LensSpace(3, 1), i) for i in range(3)] == [0, 2, 1]
    assert [conjugate_label(LensSpace(3, 2), i) for i in range(3)] == [1, 0, 2]
    assert [conjugate_label(LensSpace(2, 1), i) for i in range(2)] == [0, 1]
    with pytest.raises(ValueError):
        conjugate_label(LensSpace(3, 1), 3)


def test_conjugation_is_involution_and_symmetry():
    for p, q in coprime_pairs(120):
        s = LensSpace(p, q)
        tab = d_table(s)
        for i in range(p):
            c = conjugate_label(s, i)
            assert conjugate_label(s, c) == i
            assert tab[c] == tab[i]


def test_homeomorphism_multisets():
    for p, q in coprime_pairs(200):
        qi = pow(q, -1, p)
        assert sorted(kernels.d_table_scaled(p, q)) == sorted(kernels.d_table_scaled(p, qi))


def test_denominators_divide_4pq():
    for p, q in coprime_pairs(80):
        for v in d_table(LensSpace(p, q)).values:
            assert (4 * p * q) % v.denominator == 0


@given(st.integers(2, 400).flatmap(
    lambda p: st.tuples(st.just(p), st.sampled_from([q for q in range(1, p) if gcd(p, q) == 1]),
                        st.integers(0, p - 1))))
def test_scalar_agrees_with_table(pqi):
    p, q, i = pqi
    assert d_lens(p, q, i) == d_table(LensSpace(p, q))[i] == -oracle_d_neg(p, q, i)


def test_cache_round_trip(tmp_path):
    path = tmp_path / "d.csv"
    cache = DCache(path)
    t1 = d_table(LensSpace(11, 9), cache)
    d_table(LensSpace(7, 3), cache)
    cache.save()
    text = path.read_text()
    assert text.startswith("# lensfloer d-cache v1\np,q,i,num,den\n")
    again = DCache(path)
    assert len(again) == 2
    assert d_table(LensSpace(11, 9), again) == t1
    path.unlink()  # a pure memo: deleting it changes nothing
    assert d_table(LensSpace(11, 9), DCache(path)) == t1


def test_cache_rejects_foreign_file(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("p,q\n1,2\n")
    with pytest.raises(ValueError):
        DCache(path)


def test_cache_from_env(tmp_path, monkeypatch):
    monkeypatch.delenv("LENSFLOER_CACHE", raising=False)
    assert DCache.from_env() is None
    monkeypatch.setenv("LENSFLOER_CACHE", str(tmp_path / "c.csv"))
    assert DCache.from_env().path == tmp_path / "c.csv"
