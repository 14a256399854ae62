"""Pure-Python kernels; the reference twin of ``_ckernels.pyx``.

All d-values here are *scaled*: entry i of a table for L(p, q) is the integer
4p * d(L(p, q), i).  That product is always integral, which lets the hot loops
run on machine integers.
"""
from __future__ import annotations

from math import gcd

BACKEND = "python"


def neg_table_scaled(p: int, q: int) -> list[int]:
    """4p * d(-L(p, q), i) for i in [0, p), by Euclidean descent."""
    chain = []
    a, b = p, q
    while a > 1:
        chain.append((a, b))
        a, b = b, a % b
    tab = [0]
    for a, b in reversed(chain):
        nxt = []
        for i in range(a):
            s = 2 * i + 1 - a - b
            num, rem = divmod(a * b - s * s - a * tab[i % b], b)
            if rem:
                raise ArithmeticError(f"inexact division at L({a},{b}), i={i}")
            nxt.append(num)
        tab = nxt
    return tab


def d_table_scaled(p: int, q: int) -> list[int]:
    """4p * d(L(p, q), i) for i in [0, p)."""
    return [-v for v in neg_table_scaled(p, q)]


def _units(p: int) -> list[int]:
    return [u for u in range(1, p) if gcd(u, p) == 1] if p > 1 else [0]


def _centers(D: list[int], p: int, q: int, relaxed: bool) -> list[int]:
    if not relaxed:
        if p % 2:
            return [(q - 1) * pow(2, -1, p) % p]
        return sorted({((q - 1) // 2) % p, ((q - 1) // 2 + p // 2) % p})
    h = p // 2
    out = []
    for c in range(p):
        for v in range(1, h + 1):
            if D[(c + v) % p] != D[(c - v) % p]:
                break
        else:
            out.append(c)
    return out


def _sigma_passes(D: list[int], D1: list[int], p: int, u: int, c: int) -> bool:
    h = p // 2
    m = 8 * p
    tau = [0] * (2 * h + 1)
    # i = 0, 1, -1, 2, -2, ... so most sigmas die on the first probe
    for j in range(2 * h + 1):
        i = (j + 1) // 2 if j % 2 else -(j // 2)
        t = D1[i % p] - D[(u * i + c) % p]
        if t % m:
            return False
        tau[i + h] = t // m
    prev = 0
    for i in range(-h - 1, h + 2):
        lo = tau[i - 1 + h] if -h <= i - 1 <= h else 0
        mid = tau[i + h] if -h <= i <= h else 0
        hi = tau[i + 1 + h] if -h <= i + 1 <= h else 0
        a = lo - 2 * mid + hi + (1 if i == 0 else 0)
        if a > 1 or a < -1:
            return False
        if a:
            if a == prev:
                return False
            prev = a
    return True


def scan_sigmas(p: int, q: int, relaxed: bool = False, first_only: bool = False) -> list[tuple[int, int]]:
    """Affine correspondences (u, c) on Z/p passing the lens-space test."""
    D = d_table_scaled(p, q)
    D1 = d_table_scaled(p, 1)
    return _scan(D, D1, p, q, relaxed, first_only)


def _scan(D, D1, p, q, relaxed, first_only):
    found = []
    us = _units(p)
    for c in _centers(D, p, q, relaxed):
        if (D1[0] - D[c]) % (8 * p):
            continue
        for u in us:
            if _sigma_passes(D, D1, p, u, c):
                found.append((u, c))
                if first_only:
                    return found
    found.sort()
    return found


def census_row(p: int, relaxed: bool = False) -> list[int]:
    """All q in (0, p) coprime to p for which some correspondence passes."""
    D1 = d_table_scaled(p, 1)
    out = []
    for q in range(1, p):
        if gcd(p, q) != 1:
            continue
        if _scan(d_table_scaled(p, q), D1, p, q, relaxed, True):
            out.append(q)
    return out


def brown_unique_extrema(p: int, q: int, k: int, offset: int = 0) -> bool:
    """Unique max and min of the abelianized partial sums of prod X Y^E(i)."""
    s = 0
    hi = lo = None
    nhi = nlo = 0
    for i in range(1, p + 1):
        steps = (-k, p) if (i * q - offset) % p < k else (-k,)
        for step in steps:
            s += step
            if hi is None or s > hi:
                hi, nhi = s, 1
            elif s == hi:
                nhi += 1
            if lo is None or s < lo:
                lo, nlo = s, 1
            elif s == lo:
                nlo += 1
    return nhi == 1 and nlo == 1


def brown_row(p: int, offset: int = 0) -> tuple[int, list[tuple[int, int]]]:
    """Check every valid (q, k) at this p; returns (count checked, failures)."""
    checked = 0
    failures = []
    for q in range(1, p):
        if gcd(q, p) != 1:
            continue
        for k in range(1, p):
            if gcd(k, p) != 1:
                continue
            checked += 1
            if not brown_unique_extrema(p, q, k, offset):
                failures.append((q, k))
    return checked, failures


def scan_tables(D: list[int], D1: list[int], p: int, q: int,
                relaxed: bool = False, first_only: bool = False) -> list[tuple[int, int]]:
    """As :func:`scan_sigmas`, on scaled d-tables supplied by the caller."""
    if len(D) != p or len(D1) != p:
        raise ValueError("tables must have length p")
    return _scan(list(D), list(D1), p, q, relaxed, first_only)
