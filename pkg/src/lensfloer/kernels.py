"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  Setting ``LENSFLOER_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

__all__ = [
    "BACKEND",
    "backend",
    "available_backends",
    "d_table_scaled",
    "neg_table_scaled",
    "scan_sigmas",
    "scan_tables",
    "census_row",
    "brown_row",
    "brown_unique_extrema",
]


def _load_compiled() -> ModuleType | None:
    if os.environ.get("LENSFLOER_PURE_PYTHON", "") not in ("", "0"):
        return None
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()
_impl: ModuleType = _compiled if _compiled is not None else _pykernels

BACKEND: str = _impl.BACKEND


def backend(name: str | None = None) -> ModuleType:
    """The kernel module called ``name`` ("cython" or "python"), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


d_table_scaled = _impl.d_table_scaled
neg_table_scaled = _impl.neg_table_scaled
scan_sigmas = _impl.scan_sigmas
scan_tables = _impl.scan_tables
census_row = _impl.census_row
brown_row = _impl.brown_row
brown_unique_extrema = _impl.brown_unique_extrema
