"""Backend selection for the hot loops.

The compiled extension (``grouprank._kernels``) is used when it was built;
otherwise, or when ``GROUPRANK_PURE_PYTHON`` is set, the numpy fallback in
``grouprank._kernels_py`` takes over.  Both expose identical functions.
"""
from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("GROUPRANK_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

convolve_mod = backend.convolve_mod
ntt_rows = backend.ntt_rows
dft_rows = backend.dft_rows
rank_search = backend.rank_search


def backends() -> dict:
    """Every importable backend by name (used by the benchmark and equivalence tests)."""
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["cython"] = compiled_backend
    return out
