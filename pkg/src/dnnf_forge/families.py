"""Benchmark families: the ternary grid CNFs and their two-variable rewrite,
and the row/column mod-3 parity functions used for the forgetting separation.

Variable numbering for the grid families is X_1..X_n, Y_1..Y_n, Z_1..Z_n,
then A, B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from dnnf_forge.cnf import Cnf
from dnnf_forge.oracle import TruthOracle


def _check_n(n: int):
    if n < 1:
        raise ValueError("n must be at least 1")


def grid_vars(n: int) -> tuple[range, range, range]:
    return range(1, n + 1), range(n + 1, 2 * n + 1), range(2 * n + 1, 3 * n + 1)


def delta_a(n: int) -> Cnf:
    """All n^3 clauses X_i | Y_j | Z_k, in lexicographic (i, j, k) order."""
    _check_n(n)
    xs, ys, zs = grid_vars(n)
    clauses = [(x, y, z) for x in xs for y in ys for z in zs]
    return Cnf.trusted(3 * n, clauses)


def delta_b(n: int) -> Cnf:
    """(A | X_i), (-A | B | Y_j), (-B | Z_k); A and B registered auxiliary."""
    _check_n(n)
    xs, ys, zs = grid_vars(n)
    a, b = 3 * n + 1, 3 * n + 2
    clauses = [(a, x) for x in xs]
    clauses += [(-a, b, y) for y in ys]
    clauses += [(-b, z) for z in zs]
    return Cnf.trusted(3 * n + 2, clauses, {a: "bva", b: "bva"})


def random_cnf(num_vars: int, num_clauses: int, max_len: int = 3, seed: int | random.Random = 0) -> Cnf:
    """Uniform random clauses of length 1..max_len over distinct variables."""
    if num_vars < 1 or max_len < 1:
        raise ValueError("need at least one variable and clause length >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        k = rng.randint(1, min(max_len, num_vars))
        vs = rng.sample(range(1, num_vars + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Cnf.trusted(num_vars, clauses)


def h(bits: Sequence[bool]) -> bool:
    """True iff the number of true inputs is divisible by 3."""
    return sum(bool(b) for b in bits) % 3 == 0


@dataclass(frozen=True)
class MatrixVars:
    n: int
    grid: tuple[tuple[int, ...], ...]
    extra: int | None = None

    @classmethod
    def make(cls, n: int, with_extra: bool = False) -> "MatrixVars":
        grid = tuple(tuple(i * n + j + 1 for j in range(n)) for i in range(n))
        return cls(n, grid, n * n + 1 if with_extra else None)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self.grid

    def cols(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.grid))

    @property
    def cells(self) -> tuple[int, ...]:
        return tuple(v for row in self.grid for v in row)


MAX_SAUERHOFF_N = 4


def _parity_of_h(lines, cols) -> np.ndarray:
    acc = None
    for line in lines:
        total = sum(cols[v].astype(np.int64) for v in line)
        bit = (total % 3) == 0
        acc = bit if acc is None else acc ^ bit
    return acc


def row_col(n: int):
    """Oracle-ready callbacks computing row_n and col_n."""
    m = MatrixVars.make(n)
    return (lambda cols: _parity_of_h(m.rows(), cols)), (lambda cols: _parity_of_h(m.cols(), cols))


def sauerhoff_f(n: int) -> TruthOracle:
    """row_n(M) | col_n(M) over the n*n matrix variables."""
    _check_n(n)
    if n > MAX_SAUERHOFF_N:
        raise ValueError(f"n = {n} is too large for an explicit table (max {MAX_SAUERHOFF_N})")
    m = MatrixVars.make(n)
    row, col = row_col(n)
    return TruthOracle.from_function(m.cells, lambda c: row(c) | col(c))


def sauerhoff_g(n: int) -> TruthOracle:
    """(Z & row_n(M)) | (-Z & col_n(M)) over the matrix variables and Z = n*n + 1."""
    _check_n(n)
    if n > MAX_SAUERHOFF_N:
        raise ValueError(f"n = {n} is too large for an explicit table (max {MAX_SAUERHOFF_N})")
    m = MatrixVars.make(n, with_extra=True)
    row, col = row_col(n)

    def g(c):
        z = c[m.extra].astype(bool)
        return (z & row(c)) | (~z & col(c))

    return TruthOracle.from_function(m.cells + (m.extra,), g)
