"""The lens-space surgery test on d-invariants.

For a correspondence sigma(i) = u*i + c on Z/p set

    t_i = d(L(p, 1), i) - d(L(p, q), sigma(i))     for 2|i| <= p, else 0,

and form 1 + sum_i (t_{i-1}/2 - t_i + t_{i+1}/2) T^i.  L(p, q) can be integral
surgery on a knot in S^3 only if some admissible sigma makes that polynomial
integral with coefficients in {-1, 0, 1} whose nonzero entries alternate.

The kernels do the exhaustive search on scaled integers; every survivor is
recomputed here in exact rationals before it is reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Literal

from . import kernels
from .arith import LaurentPolynomial, poly_is_alternating_pm1
from .dinvariants import DTable, LensSpace, d_table
from .errors import InvariantViolation

__all__ = [
    "Mode",
    "Correspondence",
    "TVector",
    "NonIntegral",
    "Verdict",
    "InvariantViolation",
    "admissible_correspondences",
    "t_vector",
    "polynomial_from_t",
    "verdict",
    "passes",
    "candidate_alexanders",
]

Mode = Literal["strict", "relaxed"]
MODES: tuple[str, ...] = ("strict", "relaxed")


@dataclass(frozen=True, order=True)
class Correspondence:
    p: int
    u: int
    c: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError("modulus must be positive")
        if self.p > 1 and gcd(self.u, self.p) != 1:
            raise ValueError(f"u={self.u} is not a unit mod {self.p}")
        object.__setattr__(self, "u", self.u % self.p)
        object.__setattr__(self, "c", self.c % self.p)

    def __call__(self, i: int) -> int:
        return (self.u * i + self.c) % self.p


@dataclass(frozen=True)
class TVector:
    halfwidth: int
    values: dict[int, Fraction] = field(hash=False)

    def __getitem__(self, i: int) -> Fraction:
        return self.values.get(i, Fraction(0))

    def is_symmetric(self) -> bool:
        return all(self[i] == self[-i] for i in range(self.halfwidth + 1))


@dataclass(frozen=True)
class NonIntegral:
    """Typed failure of :func:`polynomial_from_t`: first offending exponent."""

    exponent: int
    value: Fraction

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Verdict:
    space: LensSpace
    mode: str
    witnesses: tuple[tuple[Correspondence, LaurentPolynomial], ...]

    @property
    def passed(self) -> bool:
        return bool(self.witnesses)

    def polynomials(self) -> list[LaurentPolynomial]:
        return [f for _, f in self.witnesses]

    def to_dict(self) -> dict:
        return {
            "p": self.space.p,
            "q": self.space.q,
            "mode": self.mode,
            "pass": self.passed,
            "witnesses": [
                {"u": s.u, "c": s.c, "alexander": f.format()} for s, f in self.witnesses
            ],
        }


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _strict_centers(p: int, q: int) -> list[int]:
    # 2c = q - 1 (mod p); q is odd whenever p is even, so there are two roots then
    return sorted({c for c in range(p) if (2 * c - (q - 1)) % p == 0})


def _symmetric_centers(table: DTable) -> list[int]:
    p = table.space.p
    return [
        c for c in range(p)
        if all(table[c + v] == table[c - v] for v in range(1, p // 2 + 1))
    ]


def admissible_correspondences(space: LensSpace, mode: Mode = "strict") -> list[Correspondence]:
    """Candidate sigmas, ordered by (u, c).

    Strict mode pairs each unit with the offsets solving 2c = q - 1.  Relaxed
    mode keeps every c around which the d-table is symmetric; that condition
    does not involve u.
    """
    _check_mode(mode)
    p = space.p
    if mode == "strict":
        centers = _strict_centers(p, space.q)
    else:
        centers = _symmetric_centers(d_table(space))
    us = [u for u in range(1, p) if gcd(u, p) == 1] if p > 1 else [0]
    return sorted(Correspondence(p, u, c) for u in us for c in centers)


def t_vector(space: LensSpace, sigma: Correspondence,
             table: DTable | None = None, base: DTable | None = None) -> TVector:
    if sigma.p != space.p:
        raise ValueError(f"correspondence mod {sigma.p} used on {space}")
    p = space.p
    table = table if table is not None else d_table(space)
    base = base if base is not None else d_table(LensSpace(p, 1 if p > 1 else 0))
    h = p // 2
    return TVector(h, {i: base[i % p] - table[sigma(i)] for i in range(-h, h + 1)})


def polynomial_from_t(t: TVector) -> LaurentPolynomial | NonIntegral:
    h = t.halfwidth
    coeffs: dict[int, Fraction] = {}
    for i in range(-h - 1, h + 2):
        a = (t[i - 1] - 2 * t[i] + t[i + 1]) / 2
        if i == 0:
            a += 1
        if a.denominator != 1:
            return NonIntegral(i, a)
        coeffs[i] = a
    return LaurentPolynomial(coeffs)


def _accepts(f: LaurentPolynomial | NonIntegral) -> bool:
    return isinstance(f, LaurentPolynomial) and poly_is_alternating_pm1(f)


def _witnesses(space, sigmas, table, base, strict_check):
    found: dict[LaurentPolynomial, Correspondence] = {}
    for s in sigmas:
        f = polynomial_from_t(t_vector(space, s, table, base))
        if not _accepts(f):
            if strict_check:
                raise InvariantViolation(
                    f"kernel accepted u={s.u}, c={s.c} for {space}; exact check rejects it")
            continue
        if f not in found or s < found[f]:
            found[f] = s
    return found


def verdict(space: LensSpace, mode: Mode = "strict", exhaustive: bool = False) -> Verdict:
    """Run the test on every admissible sigma.

    By default the kernel proposes the passing sigmas and each is rechecked in
    exact arithmetic; ``exhaustive=True`` skips the kernel and evaluates every
    admissible sigma exactly (slow, used for cross-checks).
    """
    _check_mode(mode)
    p = space.p
    table = d_table(space)
    base = d_table(LensSpace(p, 1 if p > 1 else 0))
    if exhaustive:
        found = _witnesses(space, admissible_correspondences(space, mode), table, base, False)
    else:
        pairs = kernels.scan_sigmas(p, space.q, mode == "relaxed", False)
        found = _witnesses(space, [Correspondence(p, u, c) for u, c in pairs], table, base, True)
    witnesses = sorted(((s, f) for f, s in found.items()), key=lambda w: (w[1].sort_key(), w[0]))
    return Verdict(space, mode, tuple(witnesses))


def passes(p: int, q: int, mode: Mode = "strict") -> bool:
    """Fast boolean form of :func:`verdict`, straight from the kernel."""
    _check_mode(mode)
    LensSpace(p, q)
    return bool(kernels.scan_sigmas(p, q, mode == "relaxed", True))


def candidate_alexanders(space: LensSpace) -> set[LaurentPolynomial]:
    """Witness polynomials of the strict test, each checked against the
    L-space knot normal form."""
    from .hfk import validate_lspace_alex

    out = set()
    for f in verdict(space, "strict").polynomials():
        validate_lspace_alex(f)
        out.add(f)
    return out
