"""The census: lens spaces passing the d-invariant test versus Berge's list.

Both sides are reduced to canonical classes (p, q0) and compared as sets.
Reports are deterministic apart from the ``run`` block (backend, worker count,
timings), so two runs with the same options serialize identically otherwise.
"""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from . import kernels
from .berge import canonicalize, enumerate_realizable
from .dinvariants import DCache, LensSpace
from .obstruction import verdict

__all__ = [
    "SCHEMA",
    "FILTERS",
    "CensusReport",
    "obstruction_row",
    "verify",
    "report_emit",
    "report_parse",
]

SCHEMA = "lensfloer.census/1"
FILTERS = ("canonical",)
FORMATS = ("json", "csv", "text")


@dataclass
class CensusReport:
    p_max: int
    mode: str = "unoriented"
    strictness: str = "strict"
    filters: tuple[str, ...] = ()
    clause6: str = "corrected"
    reading: str = "class"
    obstruction_set: list[tuple[int, int]] = field(default_factory=list)
    berge_set: list[tuple[int, int]] = field(default_factory=list)
    run: dict = field(default_factory=dict)

    @property
    def obstruction_only(self) -> list[tuple[int, int]]:
        return sorted(set(self.obstruction_set) - set(self.berge_set))

    @property
    def berge_only(self) -> list[tuple[int, int]]:
        return sorted(set(self.berge_set) - set(self.obstruction_set))

    @property
    def diff(self) -> list[tuple[int, int]]:
        return sorted(set(self.obstruction_set) ^ set(self.berge_set))

    @property
    def agreement(self) -> bool:
        return not self.diff

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "p_max": self.p_max,
            "mode": self.mode,
            "strictness": self.strictness,
            "filters": list(self.filters),
            "berge_clause6": self.clause6,
            "berge_reading": self.reading,
            "agreement": self.agreement,
            "counts": {
                "obstruction": len(self.obstruction_set),
                "berge": len(self.berge_set),
                "obstruction_only": len(self.obstruction_only),
                "berge_only": len(self.berge_only),
            },
            "obstruction_only": [list(x) for x in self.obstruction_only],
            "berge_only": [list(x) for x in self.berge_only],
            "obstruction_set": [list(x) for x in self.obstruction_set],
            "berge_set": [list(x) for x in self.berge_set],
            "run": self.run,
        }


# per-process cache handle, so pool workers open the file once
_worker_cache: dict[str, DCache] = {}


def _cache_for(path: str | None) -> DCache | None:
    if path is None:
        return None
    if path not in _worker_cache:
        _worker_cache[path] = DCache(path)
    return _worker_cache[path]


def _table(cache: DCache | None, p: int, q: int, fresh: dict) -> list[int]:
    if cache is None:
        return kernels.d_table_scaled(p, q)
    hit = cache.get(p, q)
    if hit is None:
        hit = kernels.d_table_scaled(p, q)
        cache.put(p, q, hit)
        fresh[(p, q)] = hit
    return hit


def _canonical_ok(p: int, q: int, strictness: str) -> bool:
    from .hfk import AlexanderFormError, validate_lspace_alex

    for f in verdict(LensSpace(p, q), strictness).polynomials():
        try:
            validate_lspace_alex(f)
            return True
        except AlexanderFormError:
            continue
    return False


def obstruction_row(p: int, strictness: str = "strict", filters: Sequence[str] = (),
                    cache_path: str | None = None) -> tuple[list[int], dict]:
    """q in (0, p) passing the test at this p, plus any d-tables newly computed."""
    relaxed = strictness == "relaxed"
    fresh: dict = {}
    cache = _cache_for(cache_path)
    if cache is None:
        qs = kernels.census_row(p, relaxed)
    else:
        D1 = _table(cache, p, 1, fresh)
        qs = [
            q for q in range(1, p)
            if gcd(p, q) == 1 and kernels.scan_tables(_table(cache, p, q, fresh), D1, p, q, relaxed, True)
        ]
    if "canonical" in filters:
        qs = [q for q in qs if _canonical_ok(p, q, strictness)]
    return qs, fresh


def _row_task(args):
    return args[0], obstruction_row(*args)


def verify(p_max: int, mode: str = "unoriented", strictness: str = "strict",
           filters: Iterable[str] = (), threads: int = 1, cache: DCache | None = None,
           clause6: str = "corrected", reading: str = "class") -> CensusReport:
    """Compare the obstruction census with Berge's list for 2 <= p <= p_max."""
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    if mode not in ("unoriented", "oriented"):
        raise ValueError(f"unknown mode {mode!r}")
    if strictness not in ("strict", "relaxed"):
        raise ValueError(f"unknown strictness {strictness!r}")
    filters = tuple(sorted(set(filters)))
    for f in filters:
        if f not in FILTERS:
            raise ValueError(f"unknown filter {f!r}")
    oriented = mode == "oriented"
    cache_path = str(cache.path) if cache is not None and cache.path is not None else None
    if cache is not None and cache_path is None:
        threads = 1  # an in-memory cache cannot be shared with worker processes
    if cache_path is not None:
        _worker_cache[cache_path] = cache

    t0 = time.perf_counter()
    tasks = [(p, strictness, filters, cache_path) for p in range(2, p_max + 1)]
    if threads > 1:
        # big rows first so the pool stays busy at the end
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(_row_task, sorted(tasks, reverse=True), chunksize=4))
    else:
        results = dict(map(_row_task, tasks))
    obs: set[tuple[int, int]] = set()
    for p in sorted(results):
        qs, fresh = results[p]
        if cache is not None:
            for (a, b), tab in fresh.items():
                cache.put(a, b, tab)
        obs.update((p, canonicalize(p, q, oriented)) for q in qs)
    if cache is not None:
        cache.save()
    t1 = time.perf_counter()
    rs = enumerate_realizable(p_max, clause6=clause6, reading=reading)
    ber = rs.classes(oriented)
    t2 = time.perf_counter()
    return CensusReport(
        p_max, mode, strictness, filters, clause6, reading,
        sorted(obs), sorted(ber),
        run={
            "backend": kernels.BACKEND,
            "threads": threads,
            "seconds": {"obstruction": round(t1 - t0, 3), "berge": round(t2 - t1, 3)},
        },
    )


def report_emit(report: CensusReport, fmt: str = "text") -> bytes:
    """Serialize a report.

    json: the ``to_dict`` layout, keys sorted, schema tag ``lensfloer.census/1``.
    csv:  ``p,class,obstruction,berge`` with 0/1 membership, sorted by (p, class).
    text: a short human summary containing AGREEMENT or DISAGREEMENT.
    """
    if fmt == "json":
        return (json.dumps(report.to_dict(), sort_keys=True, indent=1) + "\n").encode()
    if fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["p", "class", "obstruction", "berge"])
        obs, ber = set(report.obstruction_set), set(report.berge_set)
        for p, c in sorted(obs | ber):
            w.writerow([p, c, int((p, c) in obs), int((p, c) in ber)])
        return out.getvalue().encode()
    if fmt == "text":
        lines = [
            f"census p <= {report.p_max}  mode={report.mode}  strictness={report.strictness}"
            f"  filters={','.join(report.filters) or 'none'}",
            f"obstruction classes: {len(report.obstruction_set)}",
            f"berge classes:       {len(report.berge_set)}",
        ]
        if report.agreement:
            lines.append("AGREEMENT: the two sets are equal")
        else:
            lines.append(f"DISAGREEMENT: {len(report.diff)} classes differ")
            lines += [f"  obstruction only: L({p},{q})" for p, q in report.obstruction_only]
            lines += [f"  berge only:       L({p},{q})" for p, q in report.berge_only]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def report_parse(data: bytes | str) -> CensusReport:
    """Inverse of ``report_emit(..., "json")``."""
    d = json.loads(data)
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {d.get('schema')!r}")
    return CensusReport(
        d["p_max"], d["mode"], d["strictness"], tuple(d["filters"]),
        d["berge_clause6"], d["berge_reading"],
        [tuple(x) for x in d["obstruction_set"]],
        [tuple(x) for x in d["berge_set"]],
        run=d.get("run", {}),
    )
