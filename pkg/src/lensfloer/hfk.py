"""Knot Floer homology of knots with L-space surgeries.

An L-space knot has symmetrized Alexander polynomial

    Delta(T) = (-1)^k + sum_{j=1..k} (-1)^{k-j} (T^{n_j} + T^{-n_j})

with 0 < n_1 < ... < n_k, and HFK-hat is a single Z in each Alexander grading
n_i (i = -k..k, n_{-i} = -n_i), in the Maslov grading fixed by a recursion from
the top generator down.

The form is necessary, not sufficient.  The knot 10_132 has the polynomial of
T(2, 5), which passes the validator, yet tau would have to be 2 while 10_132
has unknotting number one, so it has no L-space surgery:

>>> a = validate_lspace_alex(LaurentPolynomial.parse("T^2 - T + 1 - T^-1 + T^-2"))
>>> tau_and_genus(a)
(2, 2)
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import LaurentPolynomial

__all__ = [
    "AlexanderFormError",
    "LSpaceAlex",
    "HfkSummary",
    "validate_lspace_alex",
    "hfk_from_alex",
    "tau_and_genus",
    "torus_knot_alex",
    "recognize_t2",
]


class AlexanderFormError(ValueError):
    """A polynomial was rejected; ``reason`` names the first failed condition."""

    def __init__(self, reason: str, poly: LaurentPolynomial | None = None):
        self.reason = reason
        self.poly = poly
        super().__init__(reason if poly is None else f"{reason}: {poly}")


@dataclass(frozen=True)
class LSpaceAlex:
    exponents: tuple[int, ...]  # n_1 < ... < n_k, all positive

    def __post_init__(self) -> None:
        e = self.exponents
        if any(n <= 0 for n in e) or any(x >= y for x, y in zip(e, e[1:])):
            raise ValueError(f"exponents must be positive and increasing: {e}")

    @property
    def k(self) -> int:
        return len(self.exponents)

    def polynomial(self) -> LaurentPolynomial:
        k = self.k
        terms = {0: (-1) ** k}
        for j, n in enumerate(self.exponents, start=1):
            terms[n] = terms[-n] = (-1) ** (k - j)
        return LaurentPolynomial(terms)


@dataclass(frozen=True)
class HfkSummary:
    """Rank-one groups, listed from the top Alexander grading down."""

    generators: tuple[tuple[int, int], ...]  # (alexander, maslov)

    @property
    def total_rank(self) -> int:
        return len(self.generators)

    def euler_characteristic(self) -> LaurentPolynomial:
        return LaurentPolynomial([(a, (-1) ** (m % 2)) for a, m in self.generators])

    def rank(self, alexander: int, maslov: int) -> int:
        return int((alexander, maslov) in self.generators)

    def is_symmetric(self) -> bool:
        gens = set(self.generators)
        return all((-a, m - 2 * a) in gens for a, m in gens)


def validate_lspace_alex(f: LaurentPolynomial) -> LSpaceAlex:
    """Accept f in the normal form above or raise :class:`AlexanderFormError`."""
    if not f.is_integral():
        raise AlexanderFormError("non-integral coefficient", f)
    if f.is_zero():
        raise AlexanderFormError("zero polynomial", f)
    if not f.is_symmetric():
        raise AlexanderFormError("not symmetric under T -> T^-1", f)
    if any(abs(c) != 1 for _, c in f.terms()):
        raise AlexanderFormError("coefficient of absolute value other than 1", f)
    if f[f.max_degree] != 1:
        raise AlexanderFormError("top coefficient is not +1", f)
    if 0 not in f:
        raise AlexanderFormError("constant term missing", f)
    upper = [(e, c) for e, c in f.terms() if e >= 0]
    for (_, c1), (_, c2) in zip(upper, upper[1:]):
        if c1 == c2:
            raise AlexanderFormError("nonzero coefficients do not alternate", f)
    return LSpaceAlex(tuple(e for e, _ in upper if e > 0))


def hfk_from_alex(a: LSpaceAlex) -> HfkSummary:
    """Gradings of HFK-hat; delta_k = 0 and, going down,
    delta_i = delta_{i+1} - 2(n_{i+1} - n_i) + 1 when k - i is odd,
    delta_i = delta_{i+1} - 1 when k - i is even."""
    k = a.k
    n = {0: 0}
    for j, e in enumerate(a.exponents, start=1):
        n[j], n[-j] = e, -e
    delta = {k: 0}
    for i in range(k - 1, -k - 1, -1):
        if (k - i) % 2:
            delta[i] = delta[i + 1] - 2 * (n[i + 1] - n[i]) + 1
        else:
            delta[i] = delta[i + 1] - 1
    return HfkSummary(tuple((n[i], delta[i]) for i in range(k, -k - 1, -1)))


def tau_and_genus(a: LSpaceAlex) -> tuple[int, int]:
    """(tau, lower bound for the four-ball genus); both are the degree n_k."""
    top = a.exponents[-1] if a.exponents else 0
    return top, top


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # dense integer coefficient lists, lowest degree first; den must be monic
    num = list(num)
    quot = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            quot[shift] = c
            for j, d in enumerate(den):
                num[shift + j] -= c * d
    return quot, num


def _poly_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return out


def torus_knot_alex(p: int, q: int) -> LaurentPolynomial:
    """Symmetrized (T^{pq} - 1)(T - 1) / ((T^p - 1)(T^q - 1))."""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError(f"need coprime p, q >= 2, got ({p}, {q})")
    num = _poly_mul([-1] + [0] * (p * q - 1) + [1], [-1, 1])
    den = _poly_mul([-1] + [0] * (p - 1) + [1], [-1] + [0] * (q - 1) + [1])
    quot, rem = _poly_divmod(num, den)
    if any(rem):
        raise ArithmeticError("inexact torus knot division")
    half = (p - 1) * (q - 1) // 2
    return LaurentPolynomial({i - half: c for i, c in enumerate(quot)})


def recognize_t2(f: LaurentPolynomial) -> int:
    """n if f is the (2, 2n+1) torus knot polynomial sum (-1)^{n-i} T^i, else raise."""
    if not f.is_integral():
        raise AlexanderFormError("non-integral coefficient", f)
    if f.is_zero():
        raise AlexanderFormError("zero polynomial", f)
    n = f.max_degree
    if f.min_degree != -n:
        raise AlexanderFormError("support not symmetric", f)
    for i in range(-n, n + 1):
        if i not in f:
            raise AlexanderFormError(f"gap in support at exponent {i}", f)
        if f[i] != (-1) ** (n - i):
            raise AlexanderFormError(f"wrong coefficient at exponent {i}", f)
    return n
