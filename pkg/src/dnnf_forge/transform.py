"""Transformations that add auxiliary variables while keeping the input's
function once those variables are existentially quantified.

Every introduced variable is recorded in ``Cnf.aux`` with the name of the
transformation that created it, so the pipeline knows what to forget.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from dnnf_forge import kernels
from dnnf_forge._csr import first_copies
from dnnf_forge.cnf import Clause, Cnf, normalize_clause
from dnnf_forge.formula import And, Const, Formula, Iff, Not, Or, Var, Xor

log = logging.getLogger(__name__)


def _add_clauses(out: list[Clause], raw: Iterable[Iterable[int]]):
    for clause in raw:
        clause = normalize_clause(clause)
        if clause is not None:  # tautologies are vacuous
            out.append(clause)


# -- Tseitin -----------------------------------------------------------------

class _Encoder:
    """Full biconditional gate definitions; n-ary AND/OR become chains of
    binary gates so every gate costs at most four clauses."""

    def __init__(self, next_var: int):
        self.next_var = next_var
        self.clauses: list[Clause] = []
        self.gates: list[int] = []

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        self.gates.append(v)
        return v

    def literal(self, f: Formula, out: int | None = None) -> int:
        """Literal equivalent to ``f``; when ``out`` is given the top gate is
        defined on that variable instead of a fresh one."""
        if isinstance(f, Var) and out is None:
            return f.index
        if isinstance(f, Not) and out is None:
            return -self.literal(f.operand)
        if isinstance(f, (Var, Not)):
            inner = self.literal(f)
            _add_clauses(self.clauses, [(-out, inner), (out, -inner)])
            return out
        if isinstance(f, Const):
            g = out if out is not None else self.fresh()
            self.clauses.append((g,) if f.value else (-g,))
            return g
        if isinstance(f, (And, Or)):
            ops = [self.literal(op) for op in f.operands]
            if len(ops) == 1:
                if out is None:
                    return ops[0]
                _add_clauses(self.clauses, [(-out, ops[0]), (out, -ops[0])])
                return out
            acc = ops[0]
            for i, nxt in enumerate(ops[1:], 1):
                g = out if (out is not None and i == len(ops) - 1) else self.fresh()
                if isinstance(f, And):
                    _add_clauses(self.clauses, [(-g, acc), (-g, nxt), (g, -acc, -nxt)])
                else:
                    _add_clauses(self.clauses, [(-g, acc, nxt), (g, -acc), (g, -nxt)])
                acc = g
            return acc
        if isinstance(f, (Xor, Iff)):
            a, b = self.literal(f.left), self.literal(f.right)
            g = out if out is not None else self.fresh()
            if isinstance(f, Iff):
                b = -b  # a <-> b  ==  a xor -b
            _add_clauses(self.clauses, [(-g, a, b), (-g, -a, -b), (g, -a, b), (g, a, -b)])
            return g
        raise TypeError(f"unknown formula node {f!r}")


def tseitin(formula: Formula, num_vars: int | None = None) -> Cnf:
    """Clausify ``formula`` with one fresh variable per (binary) gate and a
    unit clause asserting the root. Fresh variables start after
    ``num_vars`` (default: the largest variable in the formula)."""
    top = max(formula.variables(), default=0)
    if num_vars is None:
        num_vars = top
    elif num_vars < top:
        raise ValueError(f"formula mentions variable {top} beyond universe {num_vars}")
    enc = _Encoder(num_vars + 1)
    root = enc.literal(formula)
    enc.clauses.append((root,))
    aux = {g: "tseitin" for g in enc.gates}
    return Cnf.trusted(enc.next_var - 1, enc.clauses, aux)


# -- extension rule ----------------------------------------------------------

def extend(cnf: Cnf, l1: int, l2: int) -> Cnf:
    """Add a fresh X defined by X <-> (l1 | l2)."""
    for lit in (l1, l2):
        if not 1 <= abs(lit) <= cnf.num_vars:
            raise ValueError(f"literal {lit} outside the universe")
    x = cnf.num_vars + 1
    clauses = list(cnf.clauses)
    _add_clauses(clauses, [(-x, l1, l2), (x, -l1), (x, -l2)])
    return Cnf.trusted(x, clauses, {**cnf.aux, x: "extension"}, cnf.assigned)


def extend_general(cnf: Cnf, alpha: Formula) -> Cnf:
    """Conjoin Y <-> alpha for a fresh Y. Gates inside ``alpha`` get their own
    fresh variables; all of them are registered as auxiliary."""
    top = max(alpha.variables(), default=0)
    if top > cnf.num_vars:
        raise ValueError(f"alpha mentions variable {top} outside the universe")
    y = cnf.num_vars + 1
    enc = _Encoder(y + 1)
    enc.literal(alpha, out=y)
    aux = dict(cnf.aux)
    aux[y] = "extension"
    aux.update((g, "extension") for g in enc.gates)
    return Cnf.trusted(enc.next_var - 1, list(cnf.clauses) + enc.clauses, aux, cnf.assigned)


# -- bounded variable addition -----------------------------------------------

@dataclass(frozen=True)
class BvaMatch:
    matched_literals: tuple[int, ...]
    matched_clauses: tuple[Clause, ...]
    reduction: int
    new_var: int = 0


def _reduction(n_lit: int, n_cls: int) -> int:
    return n_lit * n_cls - (n_lit + n_cls)


def _grow(csr, seed: int, m_cls: np.ndarray, backend: str | None):
    """Greedy pattern growth from one seed literal.

    Returns (literals, clause ids, grid clause ids, reduction).
    """
    cpos, ks, ds = kernels.grid_matches(csr, m_cls, seed, backend)
    kcodes = np.where(ks > 0, 2 * ks.astype(np.int64), 1 - 2 * ks.astype(np.int64))
    active = np.ones(len(m_cls), dtype=bool)
    m_lit = [seed]
    chosen_codes = {kernels.lit_code(seed)}
    red = _reduction(1, len(m_cls))
    keep = np.ones(len(cpos), dtype=bool)
    ncodes = csr.occ_ptr.size - 1
    while True:
        sel = keep & active[cpos]
        if not sel.any():
            break
        counts = np.bincount(kcodes[sel], minlength=ncodes)
        best = int(np.argmax(counts))  # first maximum: smallest variable, positive first
        cnt = int(counts[best])
        new_red = _reduction(len(m_lit) + 1, cnt)
        if new_red <= red:
            break
        hit = sel & (kcodes == best)
        has = np.zeros(len(m_cls), dtype=bool)
        has[cpos[hit]] = True
        active &= has
        m_lit.append(kernels.code_lit(best))
        chosen_codes.add(best)
        keep &= kcodes != best
        red = new_red
    final = np.flatnonzero(active)
    in_lit = np.isin(kcodes, list(chosen_codes)) & active[cpos]
    grid = set(m_cls[final].tolist()) | set(ds[in_lit].tolist())
    return m_lit, final, grid, red


def bva_step(cnf: Cnf, *, backend: str | None = None) -> tuple[Cnf, BvaMatch] | None:
    """Apply one bounded-variable-addition replacement, or return None.

    Seeds are tried by descending occurrence count (ties: smaller variable,
    positive literal first). A pattern is applied when it removes clauses,
    or when it keeps the clause count but removes literals (a 2x2 grid over
    clauses of length >= 3). The fresh variable X is positive next to the
    matched literals and negative in the shortened matched clauses.
    """
    full = kernels.build_csr(cnf.clauses, cnf.num_vars)
    first = first_copies(full)
    uniq_ids = np.flatnonzero(first == np.arange(len(first)))
    if len(uniq_ids) == len(first):
        csr, uniq = full, cnf.clauses
    else:
        uniq = [cnf.clauses[i] for i in uniq_ids.tolist()]
        csr = kernels.build_csr(uniq, cnf.num_vars)
    occ = csr.occurrences
    codes = np.flatnonzero(occ >= 2)
    order = codes[np.lexsort((codes, -occ[codes]))]
    for code in order.tolist():
        seed = kernels.code_lit(code)
        m_cls = np.ascontiguousarray(csr.containing(seed), dtype=np.int32)
        m_lit, final, grid, red = _grow(csr, seed, m_cls, backend)
        if len(m_lit) < 2:
            continue
        matched = [uniq[i] for i in m_cls[final].tolist()]
        grid_lits = sum(len(c) for c in matched) * len(m_lit)
        new_lits = 2 * len(m_lit) + sum(len(c) for c in matched)
        if red < 0 or (red == 0 and new_lits >= grid_lits):
            continue
        x = cnf.num_vars + 1
        # drop every copy of a grid clause
        in_grid = np.zeros(len(first), dtype=bool)
        in_grid[uniq_ids[np.fromiter(grid, dtype=np.int64, count=len(grid))]] = True
        drop = in_grid[first].tolist()
        kept = [c for c, d in zip(cnf.clauses, drop) if not d]
        kept.extend((lit, x) for lit in m_lit)
        kept.extend(tuple(l for l in c if l != seed) + (-x,) for c in matched)
        match = BvaMatch(tuple(m_lit), tuple(matched), red, x)
        log.debug("bva: seed %d, %d literals x %d clauses, reduction %d", seed, len(m_lit), len(matched), red)
        return Cnf.trusted(x, kept, {**cnf.aux, x: "bva"}, cnf.assigned), match
    return None


def bva(cnf: Cnf, max_steps: int, *, backend: str | None = None) -> Cnf:
    """Iterate :func:`bva_step` until no pattern applies or ``max_steps``."""
    for _ in range(max_steps):
        step = bva_step(cnf, backend=backend)
        if step is None:
            break
        cnf = step[0]
    return cnf
