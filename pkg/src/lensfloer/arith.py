"""Exact arithmetic shared by every other module.

Rationals are :class:`fractions.Fraction`; nothing in the package touches
floating point.  Laurent polynomials are sparse maps exponent -> coefficient.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Union

Rational = Fraction
Coefficient = Union[int, Fraction]

__all__ = [
    "Rational",
    "ResidueClass",
    "NotInvertible",
    "NonIntegralCoefficient",
    "mod_inverse",
    "units",
    "LaurentPolynomial",
    "poly_is_alternating_pm1",
]


class NotInvertible(ValueError):
    """Raised when a residue has no inverse modulo p."""


class NonIntegralCoefficient(ValueError):
    """Raised when an integer-only operation meets a fractional coefficient."""


@dataclass(frozen=True, order=True)
class ResidueClass:
    modulus: int
    value: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, ResidueClass):
            return (self.modulus, self.value) == (other.modulus, other.value)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus, self.value))

    def __repr__(self) -> str:
        return f"[{self.value}]_{self.modulus}"


def mod_inverse(a: int, p: int) -> ResidueClass:
    """Inverse of ``a`` modulo ``p``.

    >>> mod_inverse(17, 32)
    [17]_32
    """
    if p < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, p) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {p}")
    if p == 1:
        return ResidueClass(1, 0)
    return ResidueClass(p, pow(a, -1, p))


def units(p: int) -> list[ResidueClass]:
    """All u in [1, p) coprime to p, ascending."""
    if p < 1:
        raise ValueError("modulus must be positive")
    return [ResidueClass(p, u) for u in range(1, p) if gcd(u, p) == 1]


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<var>T(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
    re.VERBOSE,
)


class LaurentPolynomial(Mapping[int, Fraction]):
    """Immutable sparse Laurent polynomial in T with exact coefficients.

    Integer-valued coefficients are stored as ``int`` so equality with plain
    integer inputs is natural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coefficient] | Iterable[tuple[int, Coefficient]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + Fraction(c)
        self._terms = {
            e: (int(c) if c.denominator == 1 else c)
            for e, c in sorted(acc.items())
            if c != 0
        }
        self._hash = None

    # Mapping protocol
    def __getitem__(self, e: int) -> Fraction:
        return self._terms.get(e, 0)

    def __iter__(self) -> Iterator[int]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, e: object) -> bool:
        return e in self._terms

    @classmethod
    def monomial(cls, e: int, c: Coefficient = 1) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def symmetric(cls, coeffs: Mapping[int, Coefficient]) -> "LaurentPolynomial":
        """Build from non-negative exponents, mirroring each onto -e."""
        terms: dict[int, Coefficient] = {}
        for e, c in coeffs.items():
            terms[e] = c
            terms[-e] = c
        return cls(terms)

    def terms(self) -> list[tuple[int, Fraction]]:
        return list(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return next(iter(self._terms))

    @property
    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return next(reversed(self._terms))

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_symmetric(self) -> bool:
        return all(self._terms.get(-e) == c for e, c in self._terms.items())

    def dense(self, lo: int | None = None, hi: int | None = None) -> list[tuple[int, Fraction]]:
        """Every exponent in [lo, hi] with its (possibly zero) coefficient."""
        if lo is None:
            lo = self.min_degree if self._terms else 0
        if hi is None:
            hi = self.max_degree if self._terms else 0
        return [(e, self[e]) for e in range(lo, hi + 1)]

    def evaluate(self, t: Coefficient) -> Fraction:
        t = Fraction(t)
        if t == 0 and any(e < 0 for e in self._terms):
            raise ZeroDivisionError("negative power of T at T = 0")
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * t**e
        return total

    def mirror(self) -> "LaurentPolynomial":
        """f(T) -> f(T^-1)."""
        return LaurentPolynomial({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by T^k."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def __add__(self, other: object) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPolynomial(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> "LaurentPolynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        """Canonical total order: by degree span, then coefficients top-down."""
        if not self._terms:
            return (0,)
        return (self.max_degree, tuple((-e, c) for e, c in reversed(self._terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.format()!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        """Text form, highest exponent first: ``T^3 - T^2 + 1 - T^-2 + T^-3``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in reversed(self._terms.items()):
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = str(mag)
            else:
                var = "T" if e == 1 else f"T^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        """Inverse of :meth:`format`; also accepts ``T^-1``, ``2*T``, ``3/2*T^2``."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial")
        if s == "0":
            return cls()
        pos = 0
        terms: list[tuple[int, Fraction]] = []
        first = True
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
            sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
            if coef is None and var is None:
                raise ValueError(f"dangling sign in {text!r}")
            if sign is None and not first:
                raise ValueError(f"missing operator before {m.group(0).strip()!r}")
            c = Fraction(coef) if coef is not None else Fraction(1)
            if sign == "-":
                c = -c
            e = 0 if var is None else (1 if exp is None else int(exp))
            terms.append((e, c))
            pos = m.end()
            first = False
        return cls(terms)


def _coerce(x: object) -> LaurentPolynomial | None:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial({0: x})
    return None


def poly_is_alternating_pm1(f: LaurentPolynomial) -> bool:
    """True iff every coefficient is in {-1, 0, 1} and nonzero signs alternate.

    Raises :class:`NonIntegralCoefficient` for fractional input, which is a
    different outcome from a plain ``False``.
    """
    if not f.is_integral():
        raise NonIntegralCoefficient(f"non-integral coefficient in {f}")
    prev = 0
    for _, c in f.terms():
        if abs(c) > 1:
            return False
        if prev and c == prev:
            return False
        prev = c
    return True
