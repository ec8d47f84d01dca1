"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it was built; otherwise, or
when ``DNNF_FORGE_PURE=1`` is set, the pure-Python ``_fallback`` is used.
"""

from __future__ import annotations

import os

from dnnf_forge import _fallback
from dnnf_forge._csr import ClauseCsr, build_csr, code_lit, lit_code

try:
    from dnnf_forge import _speedups
except ImportError:
    _speedups = None

AVAILABLE = ("cython", "python") if _speedups is not None else ("python",)
BACKEND = "python" if _speedups is None or os.environ.get("DNNF_FORGE_PURE") == "1" else "cython"


def grid_matches(csr: ClauseCsr, m_cls, seed: int, backend: str | None = None):
    """See :func:`dnnf_forge._fallback.grid_matches`."""
    backend = backend or BACKEND
    if backend == "cython":
        if _speedups is None:
            raise RuntimeError("compiled kernels are not built")
        return _speedups.grid_matches(
            csr.lits, csr.offsets, csr.occ_ptr, csr.occ_idx, csr.units, m_cls, seed
        )
    if backend == "python":
        return _fallback.grid_matches(csr, m_cls, seed)
    raise ValueError(f"unknown backend {backend!r}")


__all__ = ["AVAILABLE", "BACKEND", "ClauseCsr", "build_csr", "code_lit", "grid_matches", "lit_code"]
