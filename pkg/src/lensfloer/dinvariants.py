"""Correction terms of lens spaces.

``L(p, q)`` is p/q surgery on the unknot.  The recursion computes
d(-L(p, q), i); reversing orientation negates every value.
"""
from __future__ import annotations

import csv
import io
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Iterable

from . import kernels

__all__ = [
    "LensSpace",
    "DTable",
    "d_neg_lens",
    "d_lens",
    "d_table",
    "conjugate_label",
    "DCache",
    "CACHE_ENV",
]

CACHE_ENV = "LENSFLOER_CACHE"
CACHE_HEADER = "# lensfloer d-cache v1"


@dataclass(frozen=True, order=True)
class LensSpace:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"p must be positive, got {self.p}")
        if self.p == 1:
            if self.q not in (0, 1):
                raise ValueError("L(1, q) needs q in {0, 1}")
        elif not 0 < self.q < self.p:
            raise ValueError(f"need 0 < q < p, got L({self.p},{self.q})")
        if gcd(self.p, max(self.q, 1)) != 1:
            raise ValueError(f"gcd(p, q) != 1 for L({self.p},{self.q})")

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


def _check_args(p: int, q: int, i: int) -> None:
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    if not 0 <= q <= p or (q == 0 and p != 1):
        raise ValueError(f"q out of range for p={p}: {q}")
    if gcd(p, max(q, 1)) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    if not 0 <= i < p:
        raise ValueError(f"label {i} outside [0, {p})")


@lru_cache(maxsize=1 << 16)
def _d_neg(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    s = 2 * i + 1 - p - q
    return Fraction(p * q - s * s, 4 * p * q) - _d_neg(q, p % q, i % q)


def d_neg_lens(p: int, q: int, i: int) -> Fraction:
    """d(-L(p, q), i) by the Euclidean recursion, base d(-L(1, *), 0) = 0."""
    _check_args(p, q, i)
    return _d_neg(p, q, i)


def d_lens(p: int, q: int, i: int) -> Fraction:
    """d(L(p, q), i) = -d(-L(p, q), i).

    >>> d_lens(2, 1, 0)
    Fraction(1, 4)
    """
    return -d_neg_lens(p, q, i)


def conjugate_label(space: LensSpace, i: int) -> int:
    """Label of the conjugate Spin^c structure: (q - 1 - i) mod p."""
    if not 0 <= i < space.p:
        raise ValueError(f"label {i} outside [0, {space.p})")
    return (space.q - 1 - i) % space.p


@dataclass(frozen=True)
class DTable:
    space: LensSpace
    values: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i % self.space.p]

    def __len__(self) -> int:
        return len(self.values)

    def scaled(self) -> list[int]:
        """Integers 4p * d, the form the kernels work in."""
        p = self.space.p
        return [int(v * 4 * p) for v in self.values]


def _table_from_scaled(space: LensSpace, scaled: Iterable[int]) -> DTable:
    den = 4 * space.p
    return DTable(space, tuple(Fraction(v, den) for v in scaled))


def d_table(space: LensSpace, cache: "DCache | None" = None) -> DTable:
    """All p values d(L(p, q), i), computed by the active kernel backend."""
    if cache is not None:
        hit = cache.get(space.p, space.q)
        if hit is not None:
            return _table_from_scaled(space, hit)
    scaled = kernels.d_table_scaled(space.p, space.q)
    if cache is not None:
        cache.put(space.p, space.q, scaled)
    return _table_from_scaled(space, scaled)


class DCache:
    """Memo of scaled d-tables, optionally persisted as CSV rows ``p,q,i,num,den``.

    The file is a pure cache: deleting it never changes results.  Access is
    guarded by a lock so one instance can be shared between threads.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._tables: dict[tuple[int, int], list[int]] = {}
        self._dirty: set[tuple[int, int]] = set()
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            self._load()

    @classmethod
    def from_env(cls) -> "DCache | None":
        path = os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    def _load(self) -> None:
        assert self.path is not None
        with self.path.open(newline="") as fh:
            first = fh.readline().strip()
            if first != CACHE_HEADER:
                raise ValueError(f"{self.path}: not a v1 d-cache (header {first!r})")
            rows: dict[tuple[int, int], dict[int, int]] = {}
            for row in csv.DictReader(fh):
                p, q, i = int(row["p"]), int(row["q"]), int(row["i"])
                v = Fraction(int(row["num"]), int(row["den"])) * 4 * p
                if v.denominator != 1:
                    raise ValueError(f"{self.path}: corrupt entry {row}")
                rows.setdefault((p, q), {})[i] = int(v)
        for (p, q), vals in rows.items():
            if sorted(vals) == list(range(p)):
                self._tables[(p, q)] = [vals[i] for i in range(p)]

    def get(self, p: int, q: int) -> list[int] | None:
        with self._lock:
            return self._tables.get((p, q))

    def put(self, p: int, q: int, scaled: list[int]) -> None:
        with self._lock:
            if (p, q) not in self._tables:
                self._tables[(p, q)] = list(scaled)
                self._dirty.add((p, q))

    def __len__(self) -> int:
        return len(self._tables)

    def dumps(self) -> str:
        out = io.StringIO()
        out.write(CACHE_HEADER + "\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "q", "i", "num", "den"])
        with self._lock:
            for (p, q) in sorted(self._tables):
                for i, v in enumerate(self._tables[(p, q)]):
                    f = Fraction(v, 4 * p)
                    w.writerow([p, q, i, f.numerator, f.denominator])
        return out.getvalue()

    def save(self) -> None:
        if self.path is None or not self._dirty:
            return
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(self.dumps())
        tmp.replace(self.path)
        self._dirty.clear()
