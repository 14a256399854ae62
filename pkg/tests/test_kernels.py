"""Parity between the compiled and pure-Python kernels, and against exact code."""
from fractions import Fraction
from math import gcd

import pytest

from lensfloer import kernels
from lensfloer.dinvariants import LensSpace, d_table
from lensfloer.fibered import brown_fibered_check, relator


def pairs(pmax):
    return [(p, q) for p in range(2, pmax + 1) for q in range(1, p) if gcd(p, q) == 1]


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.backend("fortran")


def test_scaled_tables_are_exact(kernel):
    for p, q in pairs(30):
        scaled = kernel.d_table_scaled(p, q)
        assert [Fraction(v, 4 * p) for v in scaled] == list(d_table(LensSpace(p, q)).values)
        assert [-v for v in scaled] == kernel.neg_table_scaled(p, q)


def test_backends_agree():
    impls = [kernels.backend(n) for n in kernels.available_backends()]
    if len(impls) < 2:
        pytest.skip("compiled kernels not built")
    py, cy = kernels.backend("python"), kernels.backend("cython")
    for p in range(2, 45):
        for relaxed in (False, True):
            assert py.census_row(p, relaxed) == cy.census_row(p, relaxed)
        assert py.brown_row(p, 0) == cy.brown_row(p, 0)
        for q in range(1, p):
            if gcd(p, q) == 1:
                assert py.d_table_scaled(p, q) == cy.d_table_scaled(p, q)
                for relaxed in (False, True):
                    assert py.scan_sigmas(p, q, relaxed, False) == cy.scan_sigmas(p, q, relaxed, False)


def test_scan_tables_matches_scan_sigmas(kernel):
    for p, q in pairs(25):
        D, D1 = kernel.d_table_scaled(p, q), kernel.d_table_scaled(p, 1)
        for relaxed in (False, True):
            assert bool(kernel.scan_tables(D, D1, p, q, relaxed, True)) == bool(
                kernel.scan_sigmas(p, q, relaxed, True))
    with pytest.raises(ValueError):
        kernel.scan_tables([0, 0], [0, 0, 0], 3, 1)


def test_brown_row_matches_word_check(kernel):
    for p in range(2, 16):
        checked, fails = kernel.brown_row(p, 0)
        expect = [(q, k) for q in range(1, p) if gcd(p, q) == 1
                  for k in range(1, p) if gcd(p, k) == 1
                  if not brown_fibered_check(relator(p, q, k))]
        assert sorted(fails) == expect
        assert checked == sum(1 for q in range(1, p) if gcd(p, q) == 1) ** 2
