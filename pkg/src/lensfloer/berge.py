"""Lens spaces on Berge's list of twelve parameter families.

A family supplies integers (A, B, a, b) with p = |Aa + Bb|.  The lens spaces
it realizes are L(p, q) for q in {+-k^2, +-k^-2} mod p, where k is the class
a/B, equivalently -b/A (they agree because Aa + Bb = 0 mod p).  The text of
the congruence is usually quoted as a^2 q = +-b^{+-2}; ``q_values`` implements
that literal form, but for A > 1 it does not reproduce the census, so the
enumerator uses the class form by default (``reading="literal"`` switches).

Clause (6) is quoted with b = -a(A - 1) (mod B).  With that sign the family
produces lens spaces that fail the d-invariant test; b = +a(A - 1) gives exact
census agreement and is the default (``clause6="literal"`` switches).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterator, Literal

__all__ = [
    "FAMILIES",
    "BergeWitness",
    "RealizableSet",
    "family_conditions",
    "q_values",
    "berge_class",
    "realized_q",
    "verify_witness",
    "enumerate_realizable",
    "canonicalize",
    "closure_failures",
]

FAMILIES = tuple(range(1, 13))
Clause6 = Literal["corrected", "literal"]
Reading = Literal["class", "literal"]


@dataclass(frozen=True, order=True)
class BergeWitness:
    family: int
    A: int
    B: int
    a: int
    b: int
    p: int
    q: int

    def as_row(self) -> list[int]:
        return [self.family, self.A, self.B, self.a, self.b, self.p, self.q]


@dataclass
class RealizableSet:
    bound: int
    entries: dict[int, dict[int, BergeWitness]] = field(default_factory=dict)

    def add(self, w: BergeWitness) -> None:
        self.entries.setdefault(w.p, {}).setdefault(w.q, w)

    def __contains__(self, pq: object) -> bool:
        if not isinstance(pq, tuple) or len(pq) != 2:
            return False
        p, q = pq
        return q in self.entries.get(p, {})

    def __len__(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((p, q) for p, row in self.entries.items() for q in row)

    def witnesses(self) -> Iterator[BergeWitness]:
        for p, q in self.pairs():
            yield self.entries[p][q]

    def witness(self, p: int, q: int) -> BergeWitness:
        return self.entries[p][q]

    def classes(self, oriented: bool = False) -> set[tuple[int, int]]:
        return {(p, canonicalize(p, q, oriented)) for p, q in self.pairs()}


def _divides_mod(x: int, m: int) -> bool:
    # x = 0 (mod m) with the convention that m = 0 means x = 0
    return x == 0 if m == 0 else x % m == 0


def _j_family(family: int, J: int) -> tuple[int, int, int, int]:
    return {
        9: (4 * J + 1, 2 * J + 1, 6 * J + 1, -J),
        10: (6 * J + 2, 2 * J + 1, 4 * J + 1, -J),
        11: (6 * J + 4, 2 * J + 1, -4 * J - 3, J + 1),
        12: (4 * J + 3, 2 * J + 1, -6 * J - 5, J + 1),
    }[family]


def family_conditions(family: int, A: int, B: int, a: int, b: int,
                      clause6: Clause6 = "corrected") -> bool:
    """The extra constraint of clause ``family`` (1..12) on (A, B, a, b)."""
    unit_a = a in (1, -1)
    if family == 1:
        return A == 1 and unit_a and gcd(B, b) == 1 and B >= 2
    if family == 2:
        return A == 1 and unit_a and gcd(B, b) == 2 and B >= 4
    if family == 3:
        return A > 1 and unit_a and B != 0 and any(
            (B + e) % A == 0 and ((B + e) // A) % 2 == 1 and _divides_mod(b + 2 * e * A * a, B)
            for e in (1, -1)
        )
    if family == 4:
        return A > 3 and unit_a and B != 0 and any(
            (2 * B + e) % A == 0 and _divides_mod(b + e * A * a, B) for e in (1, -1)
        )
    if family == 5:
        return A > 1 and A % 2 == 1 and unit_a and B != 0 and any(
            (B - e) % A == 0 and _divides_mod(b + e * A * a, B) for e in (1, -1)
        )
    if family == 6:
        sign = 1 if clause6 == "corrected" else -1
        return (A > 2 and A % 2 == 0 and unit_a and B == 2 * A + 1
                and _divides_mod(b - sign * a * (A - 1), B))
    if family == 7:
        return a == -(A + B) and b == -B
    if family == 8:
        return a == -(A + B) and b == B
    if family in (9, 10, 11, 12):
        if B % 2 == 0:
            return False
        return (A, B, a, b) == _j_family(family, (B - 1) // 2)
    raise ValueError(f"family must be in 1..12, got {family}")


def _square_classes(p: int, k: int) -> set[int]:
    k2 = k * k % p
    ik2 = pow(k2, -1, p)
    return {v % p for v in (k2, -k2, ik2, -ik2)}


def q_values(p: int, a: int, b: int) -> set[int]:
    """All q in (0, p) coprime to p with a^2 q = +-b^2 or +-b^-2 (mod p).

    The b^-2 branch is skipped when b is not a unit.  Raises ValueError when
    a is not a unit.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    if gcd(a, p) != 1:
        raise ValueError(f"a={a} is not a unit mod {p}")
    ia2 = pow(a * a, -1, p)
    rhs = [b * b, -b * b]
    if gcd(b, p) == 1:
        ib2 = pow(b * b, -1, p)
        rhs += [ib2, -ib2]
    out = {r * ia2 % p for r in rhs}
    return {q for q in out if q and gcd(q, p) == 1}


def berge_class(p: int, A: int, B: int, a: int, b: int) -> int | None:
    """The unit k = a/B = -b/A mod p, or None if neither quotient is a unit."""
    if gcd(B, p) == 1 and gcd(a, p) == 1:
        return a * pow(B, -1, p) % p
    if gcd(A, p) == 1 and gcd(b, p) == 1:
        return -b * pow(A, -1, p) % p
    return None


def realized_q(p: int, A: int, B: int, a: int, b: int, reading: Reading = "class") -> set[int]:
    if p < 2:
        return set()
    if reading == "literal":
        return q_values(p, a, b) if gcd(a, p) == 1 else set()
    k = berge_class(p, A, B, a, b)
    return set() if k is None else _square_classes(p, k)


def verify_witness(w: BergeWitness, clause6: Clause6 = "corrected",
                   reading: Reading = "class") -> bool:
    """Recheck a witness from scratch: clause, p = |Aa + Bb|, and the q-congruence."""
    return (
        family_conditions(w.family, w.A, w.B, w.a, w.b, clause6)
        and w.p == abs(w.A * w.a + w.B * w.b)
        and 0 < w.q < w.p
        and gcd(w.p, w.q) == 1
        and w.q in realized_q(w.p, w.A, w.B, w.a, w.b, reading)
    )


def _divisors_table(n: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(n + 1)]
    for d in range(1, n + 1):
        for m in range(d, n + 1, d):
            divs[m].append(d)
    return divs


def _b_range(P: int, A: int, B: int, a: int, residue: int) -> range:
    """Integers b = residue (mod B) with |Aa + Bb| <= P."""
    lo = -((P + A * a) // B)          # ceil((-P - Aa) / B)
    hi = (P - A * a) // B
    first = lo + (residue - lo) % B
    return range(first, hi + 1, B)


def _unit_a_params(P: int, families: set[int], scale: int, clause6: Clause6):
    """(family, A, B, a, b) for clauses 1-6, each with a = +-1 and B >= 1.

    (A, B, a, b) -> (A, -B, a, -b) preserves every clause and the class a/B up
    to sign, so B > 0 loses nothing.  Clause (5) with B = 1 allows every odd A,
    but then a/B = +-1 and only L(p, 1) arises, which clause (1) already gives;
    that degenerate case is skipped.
    """
    if families & {1, 2}:
        for B in range(2, scale * (P + 1) + 1):
            for a in (1, -1):
                for b in range(-((P + a) // B), (P - a) // B + 1):
                    g = gcd(B, b)
                    if g == 1 and 1 in families:
                        yield 1, 1, B, a, b
                    elif g == 2 and B >= 4 and 2 in families:
                        yield 2, 1, B, a, b
    if not families & {3, 4, 5, 6}:
        return
    Bmax = scale * (2 * P + 4)
    divs = _divisors_table(2 * Bmax + 1)
    for B in range(1, Bmax + 1):
        for a in (1, -1):
            seen: set[tuple[int, int]] = set()
            cands: list[tuple[int, int, int]] = []
            for e in (1, -1):
                if 3 in families:
                    for A in divs[B + e] if B + e > 0 else ():
                        if A > 1 and ((B + e) // A) % 2 == 1:
                            cands.append((3, A, -2 * e * A * a))
                if 4 in families:
                    for A in divs[2 * B + e]:
                        if A > 3:
                            cands.append((4, A, -e * A * a))
                if 5 in families:
                    for A in divs[B - e] if B - e > 0 else ():
                        if A > 1 and A % 2 == 1:
                            cands.append((5, A, -e * A * a))
            if 6 in families and B % 2 == 1:
                A = (B - 1) // 2
                if A > 2 and A % 2 == 0:
                    sign = 1 if clause6 == "corrected" else -1
                    cands.append((6, A, sign * a * (A - 1)))
            for fam, A, r in cands:
                for b in _b_range(P, A, B, a, r % B):
                    if (fam, A, b) in seen:
                        continue
                    seen.add((fam, A, b))
                    yield fam, A, B, a, b


def _quadratic_params(P: int, families: set[int], scale: int):
    # Families 7 and 8 depend only on (A, B).  Family 7's form A^2 + AB + B^2 is
    # definite.  Family 8's form is indefinite, but (A, B) -> (B, A + B) preserves
    # p and the class a/B, so reduced representatives with |A|, |B| = O(sqrt p)
    # cover every orbit.
    M = scale * (2 * isqrt(P) + 3)
    for fam in (7, 8):
        if fam not in families:
            continue
        for A in range(-M, M + 1):
            for B in range(-M, M + 1):
                yield fam, A, B, -(A + B), (-B if fam == 7 else B)
    for fam in (9, 10, 11, 12):
        if fam not in families:
            continue
        for J in range(-M, M + 1):
            yield (fam, *_j_family(fam, J))


def enumerate_realizable(P_max: int, family: int | None = None, bound_scale: int = 1,
                         clause6: Clause6 = "corrected", reading: Reading = "class",
                         self_check: bool = True) -> RealizableSet:
    """Every (p, q) with 2 <= p <= P_max realized by some family, with a witness.

    The first witness found in a fixed loop order is kept, so the output is
    deterministic.  ``bound_scale`` multiplies every loop bound; the bounds are
    tested by checking that doubling them adds nothing.
    """
    if P_max < 2:
        raise ValueError("P_max must be at least 2")
    if family is not None and family not in FAMILIES:
        raise ValueError(f"family must be in 1..12, got {family}")
    families = {family} if family is not None else set(FAMILIES)
    out = RealizableSet(P_max)
    params = (
        list(_unit_a_params(P_max, families, bound_scale, clause6))
        + list(_quadratic_params(P_max, families, bound_scale))
    )
    for fam, A, B, a, b in params:
        p = abs(A * a + B * b)
        if not 2 <= p <= P_max:
            continue
        for q in sorted(realized_q(p, A, B, a, b, reading)):
            w = BergeWitness(fam, A, B, a, b, p, q)
            if self_check and (p, q) not in out and not verify_witness(w, clause6, reading):
                raise AssertionError(f"generator emitted an invalid witness {w}")
            out.add(w)
    return out


def canonicalize(p: int, q: int, oriented: bool = False) -> int:
    """Smallest representative of L(p, q) up to homeomorphism.

    Oriented: min(q, q^-1).  Unoriented also allows p - q and its inverse.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    q %= p
    if gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    reps = {q, pow(q, -1, p)}
    if not oriented:
        reps |= {p - q, pow(p - q, -1, p)}
    return min(reps)


def closure_failures(rs: RealizableSet) -> list[tuple[int, int]]:
    """(p, q) emitted without (p, q^-1); homeomorphic spaces should appear together."""
    return [(p, q) for p, q in rs.pairs() if (p, pow(q, -1, p)) not in rs]
