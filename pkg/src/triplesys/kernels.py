"""Backend selection for the table scans.

The compiled extension is used when it imports; otherwise (or when
``TRIPLESYS_PURE_PYTHON=1``) the numpy implementation is used.  Scans can be
split over threads along the outermost index; the merged witness is the
lexicographically least one regardless of the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

if os.environ.get("TRIPLESYS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

_threads = 1

SCANS = ("medial_witness", "left_distributive_witness", "right_distributive_witness",
         "antidistributive_witness", "cml_witness")


def set_threads(n: int) -> None:
    global _threads
    if n < 1:
        raise ValueError("thread count must be positive")
    _threads = n


def as_table(T) -> np.ndarray:
    return np.ascontiguousarray(T, dtype=np.int32)


def backend_module(name: str | None = None):
    """The kernel module for ``"compiled"``, ``"python"`` or the active default."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "compiled":
        from . import _ckernels  # type: ignore[attr-defined]
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def scan(name: str, T, *args, backend: str | None = None, threads: int | None = None):
    """Run a named scan over the whole table."""
    impl = backend_module(backend)
    fn = getattr(impl, name)
    T = as_table(T)
    n = T.shape[0]
    workers = min(threads or _threads, max(n, 1))
    if workers <= 1:
        return fn(T, 0, n, *args)
    bounds = np.linspace(0, n, workers + 1).astype(int)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, T, int(lo), int(hi), *args)
                   for lo, hi in zip(bounds[:-1], bounds[1:])]
        results = [f.result() for f in futures]
    for r in results:
        if r is not None:
            return r
    return None
