"""A small top-down d-DNNF compiler.

Unit propagation, then connected components (decomposable AND), then a
decision OR on the most frequent variable. Components are cached on their
exact clause set, so equal subproblems share one node.
"""

from __future__ import annotations

import sys
import time
from collections import Counter
from dataclasses import dataclass, field

from dnnf_forge.cnf import Clause, Cnf, clause_components, condition_clauses, propagate_clauses
from dnnf_forge.nnf import Kind, NnfBuilder, NnfDag


class CompileTimeout(RuntimeError):
    pass


def branch_heuristic(cnf: Cnf | list[Clause]) -> int:
    """Variable with the most clause occurrences; ties go to the smallest index."""
    clauses = cnf.clauses if isinstance(cnf, Cnf) else cnf
    counts = Counter(abs(lit) for clause in clauses for lit in clause)
    if not counts:
        raise ValueError("no unassigned variable to branch on")
    return min(counts, key=lambda v: (-counts[v], v))


def _key(clauses: list[Clause]) -> tuple[Clause, ...]:
    return tuple(sorted({tuple(sorted(c)) for c in clauses}))


@dataclass
class CompileCache:
    entries: dict = field(default_factory=dict)
    hits: int = 0
    misses: int = 0


class Compiler:
    def __init__(self, *, cache: bool = True, timeout: float | None = None):
        self.use_cache = cache
        self.timeout = timeout
        self.cache = CompileCache()
        self._deadline = None
        self._b: NnfBuilder | None = None
        self.decisions = 0

    def compile(self, cnf: Cnf) -> NnfDag:
        self._b = NnfBuilder()
        self.cache = CompileCache()
        self.decisions = 0
        self._deadline = None if self.timeout is None else time.monotonic() + self.timeout
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 20 * (cnf.num_vars + 50)))
        try:
            root = self._formula(list(cnf.clauses))
        finally:
            sys.setrecursionlimit(limit)
        b, self._b = self._b, None
        return b.build(root, cnf.num_vars)

    def _formula(self, clauses: list[Clause]) -> int:
        b = self._b
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise CompileTimeout(f"compilation exceeded {self.timeout} s")
        result = propagate_clauses(clauses)
        if result is None:
            return b.false()
        residual, implied = result
        parts = [b.lit(lit) for lit in sorted(implied, key=abs)]
        for comp in clause_components(residual):
            node = self._component(comp)
            if b.nodes[node].kind is Kind.FALSE:
                return node
            parts.append(node)
        return b.conj(parts)

    def _component(self, clauses: list[Clause]) -> int:
        key = None
        if self.use_cache:
            key = _key(clauses)
            hit = self.cache.entries.get(key)
            if hit is not None:
                self.cache.hits += 1
                return hit
            self.cache.misses += 1
        b = self._b
        v = branch_heuristic(clauses)
        self.decisions += 1
        branches = []
        for lit in (v, -v):
            sub = self._formula(condition_clauses(clauses, frozenset((lit,))))
            if b.nodes[sub].kind is not Kind.FALSE:
                branches.append(b.conj([b.lit(lit), sub]))
        node = b.disj(branches, decision=v) if len(branches) == 2 else (branches[0] if branches else b.false())
        if key is not None:
            self.cache.entries[key] = node
        return node


def compile_cnf(cnf: Cnf, *, cache: bool = True, timeout: float | None = None) -> NnfDag:
    return Compiler(cache=cache, timeout=timeout).compile(cnf)
