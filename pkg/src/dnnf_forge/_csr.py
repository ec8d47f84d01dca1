"""Flat clause storage shared by both kernel backends."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


def lit_code(lit: int) -> int:
    """Dense literal index: 2v for v, 2v+1 for -v (so ascending code sorts by
    variable, positive first)."""
    return 2 * lit if lit > 0 else 1 - 2 * lit


def code_lit(code: int) -> int:
    return code >> 1 if not code & 1 else -(code >> 1)


@dataclass
class ClauseCsr:
    clauses: Sequence[tuple[int, ...]]
    num_vars: int
    lits: np.ndarray       # int32, all literals back to back
    offsets: np.ndarray    # int64, clause i is lits[offsets[i]:offsets[i+1]]
    occ_ptr: np.ndarray    # int64, clauses holding code c are occ_idx[occ_ptr[c]:occ_ptr[c+1]]
    occ_idx: np.ndarray    # int32, ascending within each literal
    units: np.ndarray      # int32, ids of unit clauses
    scratch: dict = field(default_factory=dict)

    @property
    def occurrences(self) -> np.ndarray:
        return np.diff(self.occ_ptr)

    def containing(self, lit: int) -> np.ndarray:
        c = lit_code(lit)
        return self.occ_idx[self.occ_ptr[c]:self.occ_ptr[c + 1]]


def build_csr(clauses: Sequence[tuple[int, ...]], num_vars: int) -> ClauseCsr:
    n = len(clauses)
    sizes = np.fromiter(map(len, clauses), dtype=np.int64, count=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(sizes, out=offsets[1:])
    total = int(offsets[-1])
    lits = np.fromiter(itertools.chain.from_iterable(clauses), dtype=np.int32, count=total)
    codes = np.where(lits > 0, 2 * lits.astype(np.int64), 1 - 2 * lits.astype(np.int64))
    owner = np.repeat(np.arange(n, dtype=np.int32), sizes)
    order = np.argsort(codes, kind="stable")
    occ_idx = owner[order]
    counts = np.bincount(codes, minlength=2 * (num_vars + 1))
    occ_ptr = np.zeros(counts.size + 1, dtype=np.int64)
    np.cumsum(counts, out=occ_ptr[1:])
    units = np.flatnonzero(sizes == 1).astype(np.int32)
    return ClauseCsr(clauses, num_vars, lits, offsets, occ_ptr, occ_idx, units)


def first_copies(csr: ClauseCsr) -> np.ndarray:
    """For each clause, the index of the first clause with the same literal set.

    Clauses are grouped by length and compared as sorted literal rows, so the
    whole pass stays in numpy.
    """
    n = len(csr.offsets) - 1
    sizes = np.diff(csr.offsets)
    first = np.arange(n, dtype=np.int64)
    for size in np.unique(sizes).tolist():
        ids = np.flatnonzero(sizes == size)
        if size == 0:
            first[ids] = ids[0]
            continue
        rows = csr.lits[csr.offsets[ids][:, None] + np.arange(size)]
        rows.sort(axis=1)
        _, idx, inv = np.unique(rows, axis=0, return_index=True, return_inverse=True)
        first[ids] = ids[idx[inv.ravel()]]
    return first
