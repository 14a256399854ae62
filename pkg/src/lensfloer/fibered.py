"""Fiberedness of Berge knots in lens spaces via Brown's criterion.

The complement of the knot determined by (p, q, k) has the one-relator
presentation <X, Y | prod_{i=1..p} X Y^{E(i)}> where E(i) = 1 exactly when
i*q mod p lies in {0, ..., k-1}.  The abelianization chi sends X to -k and Y to
p.  Brown's criterion: the complement fibers when the partial sums of chi along
the relator reach their maximum once and their minimum once.

Only positive words occur here, so inverse letters are not supported.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from . import kernels

__all__ = [
    "exponent_pattern",
    "RelatorWord",
    "ChiProfile",
    "BrownCertificate",
    "relator",
    "parse_word",
    "cyclically_equal",
    "brown_fibered_check",
    "FiberednessReport",
    "fiberedness_census",
]


def _check(p: int, q: int, k: int) -> None:
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if gcd(q, p) != 1:
        raise ValueError(f"gcd(q, p) != 1 for q={q}, p={p}")
    if not 0 < k < p or gcd(k, p) != 1:
        raise ValueError(f"k must be a unit in (0, p), got k={k}, p={p}")


def exponent_pattern(p: int, q: int, k: int, offset: int = 0) -> tuple[int, ...]:
    """E(1), ..., E(p).  ``offset`` shifts the window of k residues to
    {offset, ..., offset + k - 1}; other offsets give conjugate presentations."""
    _check(p, q, k)
    return tuple(1 if (i * q - offset) % p < k else 0 for i in range(1, p + 1))


@dataclass(frozen=True)
class RelatorWord:
    letters: str
    p: int = field(default=0, compare=False)
    k: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if set(self.letters) - {"X", "Y"}:
            raise ValueError(f"only the letters X and Y are allowed: {self.letters!r}")
        if not self.p:
            object.__setattr__(self, "p", self.p_count)
        if not self.k:
            object.__setattr__(self, "k", self.k_count)

    @property
    def p_count(self) -> int:
        return self.letters.count("X")

    @property
    def k_count(self) -> int:
        return self.letters.count("Y")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(
            m.group(0)[0] + (f"^{len(m.group(0))}" if len(m.group(0)) > 1 else "")
            for m in re.finditer(r"X+|Y+", self.letters)
        )

    def rotations(self) -> list["RelatorWord"]:
        w = self.letters
        return [RelatorWord(w[r:] + w[:r], self.p, self.k) for r in range(len(w))]


def relator(p: int, q: int, k: int, offset: int = 0) -> RelatorWord:
    """prod_{i=1..p} X Y^{E(i)}.

    >>> str(relator(11, 2, 4))
    'XYX^5YXYX^4Y'
    """
    word = "".join("XY" if e else "X" for e in exponent_pattern(p, q, k, offset))
    return RelatorWord(word, p, k)


_POWER_RE = re.compile(r"([XY])(?:\^(\d+))?")


def parse_word(text: str) -> RelatorWord:
    """Read ``XYX^5Y`` (or with unicode superscripts, ``XYX⁵Y``) into letters."""
    sup = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
    s = re.sub(r"([XY])([0-9]+)", r"\1^\2", text.translate(sup).replace(" ", ""))
    pos, out = 0, []
    while pos < len(s):
        m = _POWER_RE.match(s, pos)
        if m is None:
            raise ValueError(f"cannot parse word near {s[pos:]!r}")
        out.append(m.group(1) * int(m.group(2) or 1))
        pos = m.end()
    return RelatorWord("".join(out))


def cyclically_equal(w1: RelatorWord | str, w2: RelatorWord | str) -> bool:
    a = w1.letters if isinstance(w1, RelatorWord) else w1
    b = w2.letters if isinstance(w2, RelatorWord) else w2
    return len(a) == len(b) and b in a + a


@dataclass(frozen=True)
class ChiProfile:
    partial_sums: tuple[int, ...]
    chi_x: int
    chi_y: int


@dataclass(frozen=True)
class BrownCertificate:
    fibered: bool
    profile: ChiProfile
    max_value: int
    min_value: int
    max_indices: tuple[int, ...]  # 1-based positions n of S_n
    min_indices: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.fibered


def brown_fibered_check(w: RelatorWord, chi: tuple[int, int] | None = None) -> BrownCertificate:
    """Partial sums S_n = chi(A_1 ... A_n); fibered iff max and min each occur once.

    ``chi`` overrides the default (chi(X), chi(Y)) = (-k, p).
    """
    cx, cy = chi if chi is not None else (-w.k, w.p)
    s, sums = 0, []
    for letter in w.letters:
        s += cx if letter == "X" else cy
        sums.append(s)
    if not sums:
        raise ValueError("empty word")
    hi, lo = max(sums), min(sums)
    at_hi = tuple(n for n, v in enumerate(sums, 1) if v == hi)
    at_lo = tuple(n for n, v in enumerate(sums, 1) if v == lo)
    return BrownCertificate(
        len(at_hi) == 1 and len(at_lo) == 1,
        ChiProfile(tuple(sums), cx, cy),
        hi, lo, at_hi, at_lo,
    )


@dataclass
class FiberednessReport:
    p_max: int
    offset: int
    checked: int = 0
    failures: list[tuple[int, int, int]] = field(default_factory=list)
    rotation_pmax: int = 0
    rotations_checked: int = 0
    rotation_disagreements: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.rotation_disagreements

    def to_dict(self) -> dict:
        return {
            "p_max": self.p_max,
            "offset": self.offset,
            "checked": self.checked,
            "failures": [list(t) for t in self.failures],
            "rotation_pmax": self.rotation_pmax,
            "rotations_checked": self.rotations_checked,
            "rotation_disagreements": [list(t) for t in self.rotation_disagreements],
        }


def fiberedness_census(p_max: int, offset: int = 0, rotation_pmax: int = 13) -> FiberednessReport:
    """Brown's test on every (p, q, k) with p <= p_max, q and k units mod p.

    For p <= rotation_pmax every cyclic rotation of every relator is also
    tested; a rotation whose verdict differs from the original is recorded.
    """
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    rep = FiberednessReport(p_max, offset, rotation_pmax=min(rotation_pmax, p_max))
    for p in range(2, p_max + 1):
        checked, fails = kernels.brown_row(p, offset)
        rep.checked += checked
        rep.failures.extend((p, q, k) for q, k in fails)
    for p in range(2, rep.rotation_pmax + 1):
        for q in range(1, p):
            if gcd(q, p) != 1:
                continue
            for k in range(1, p):
                if gcd(k, p) != 1:
                    continue
                w = relator(p, q, k, offset)
                base = brown_fibered_check(w).fibered
                for r, rot in enumerate(w.rotations()):
                    rep.rotations_checked += 1
                    if brown_fibered_check(rot).fibered != base:
                        rep.rotation_disagreements.append((p, q, k, r))
    return rep
