"""CNF data model, DIMACS I/O and the basic clausal operations.

Variables and literals follow the DIMACS convention: variables are positive
integers, a literal is a non-zero integer whose sign is its polarity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Clause = tuple[int, ...]

AUX_TAGS = ("tseitin", "extension", "bva")


class DimacsError(ValueError):
    pass


def normalize_clause(literals: Iterable[int]) -> Clause | None:
    """Drop duplicate literals (first occurrence wins); None if tautologous."""
    seen: dict[int, None] = {}
    for lit in literals:
        if lit == 0:
            raise ValueError("0 is not a literal")
        if -lit in seen:
            return None
        seen[lit] = None
    return tuple(seen)


@dataclass(frozen=True, eq=True)
class Cnf:
    """An immutable clause list over variables ``1..num_vars``.

    ``aux`` maps auxiliary variables to the transformation that introduced
    them. ``assigned`` holds variables fixed by conditioning; they keep their
    index but are no longer part of :attr:`variables`.
    """

    num_vars: int
    clauses: tuple[Clause, ...] = ()
    aux: Mapping[int, str] = field(default_factory=dict)
    assigned: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("negative variable count")
        clauses = []
        for raw in self.clauses:
            clause = normalize_clause(raw)
            if clause is None:
                raise ValueError(f"tautologous clause {tuple(raw)}")
            for lit in clause:
                if abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} exceeds universe {self.num_vars}")
            clauses.append(clause)
        object.__setattr__(self, "clauses", tuple(clauses))
        for var, tag in self.aux.items():
            if not 1 <= var <= self.num_vars:
                raise ValueError(f"auxiliary variable {var} outside universe")
            if tag not in AUX_TAGS:
                raise ValueError(f"unknown provenance tag {tag!r}")
        object.__setattr__(self, "aux", dict(sorted(self.aux.items())))
        object.__setattr__(self, "assigned", frozenset(self.assigned))

    @classmethod
    def trusted(cls, num_vars, clauses, aux=None, assigned=frozenset()) -> "Cnf":
        """Build without re-validating clauses the caller already guarantees."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "num_vars", num_vars)
        object.__setattr__(obj, "clauses", tuple(clauses))
        object.__setattr__(obj, "aux", dict(sorted((aux or {}).items())))
        object.__setattr__(obj, "assigned", frozenset(assigned))
        return obj

    __hash__ = None  # type: ignore[assignment]

    @property
    def variables(self) -> tuple[int, ...]:
        """Unassigned variables of the universe, ascending."""
        return tuple(v for v in range(1, self.num_vars + 1) if v not in self.assigned)

    @property
    def original_variables(self) -> tuple[int, ...]:
        return tuple(v for v in self.variables if v not in self.aux)

    def mentioned(self) -> frozenset[int]:
        return frozenset(abs(lit) for clause in self.clauses for lit in clause)

    def has_empty_clause(self) -> bool:
        return any(not c for c in self.clauses)

    def __len__(self):
        return len(self.clauses)


# -- DIMACS -----------------------------------------------------------------

def parse_dimacs(text: str | bytes) -> Cnf:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header = None
    aux: dict[int, str] = {}
    tokens: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped == "%":
            continue
        if stripped.startswith("c"):
            parts = stripped.split()
            if len(parts) == 4 and parts[0] == "c" and parts[1] == "aux":
                try:
                    aux[int(parts[2])] = parts[3]
                except ValueError:
                    raise DimacsError(f"line {lineno}: malformed aux annotation") from None
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {stripped!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {stripped!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative header counts")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause data before header")
        try:
            tokens.extend(int(tok) for tok in stripped.split())
        except ValueError:
            raise DimacsError(f"line {lineno}: non-integer literal") from None
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    num_vars, num_clauses = header
    if tokens and tokens[-1] != 0:
        raise DimacsError("last clause is not terminated by 0")
    clauses = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            clauses.append(current)
            current = []
        else:
            if abs(tok) > num_vars:
                raise DimacsError(f"literal {tok} exceeds declared {num_vars} variables")
            current.append(tok)
    if len(clauses) != num_clauses:
        raise DimacsError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    normalized = []
    for raw in clauses:
        clause = normalize_clause(raw)
        if clause is None:
            raise DimacsError(f"tautologous clause {' '.join(map(str, raw))} 0")
        normalized.append(clause)
    try:
        return Cnf(num_vars, tuple(normalized), aux)
    except ValueError as exc:
        raise DimacsError(str(exc)) from None


def write_dimacs(cnf: Cnf) -> bytes:
    lines = [f"c aux {var} {tag}" for var, tag in cnf.aux.items()]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    lines.extend(" ".join(map(str, clause + (0,))) for clause in cnf.clauses)
    return ("\n".join(lines) + "\n").encode("ascii")


# -- conditioning and propagation --------------------------------------------

def _check_literal_set(lits: Iterable[int]) -> frozenset[int]:
    lits = frozenset(lits)
    for lit in lits:
        if -lit in lits:
            raise ValueError(f"contradictory literals {lit} and {-lit}")
    return lits


def condition_clauses(clauses: Iterable[Clause], lits: frozenset[int]) -> list[Clause]:
    out = []
    for clause in clauses:
        if any(lit in lits for lit in clause):
            continue
        out.append(tuple(lit for lit in clause if -lit not in lits))
    return out


def condition(cnf: Cnf, lits: Iterable[int]) -> Cnf:
    """Condition on a consistent set of literals (Delta | lits)."""
    lits = _check_literal_set(lits)
    if not lits:
        return cnf
    for lit in lits:
        if abs(lit) > cnf.num_vars:
            raise ValueError(f"literal {lit} outside universe")
    assigned = cnf.assigned | {abs(lit) for lit in lits}
    return Cnf.trusted(cnf.num_vars, condition_clauses(cnf.clauses, lits), cnf.aux, assigned)


def propagate_clauses(clauses: Sequence[Clause]) -> tuple[list[Clause], set[int]] | None:
    """Unit propagation to fixpoint on a raw clause list; None on conflict."""
    implied: set[int] = set()
    clauses = list(clauses)
    while True:
        units = set()
        for clause in clauses:
            if not clause:
                return None
            if len(clause) == 1:
                units.add(clause[0])
        if not units:
            return clauses, implied
        if any(-lit in units for lit in units):
            return None
        implied |= units
        clauses = condition_clauses(clauses, frozenset(units))


def unit_propagate(cnf: Cnf) -> tuple[Cnf, frozenset[int]] | None:
    """Propagate unit clauses to fixpoint.

    Returns the residual Cnf and the implied literals, or None when an empty
    clause arises (conflict).
    """
    result = propagate_clauses(cnf.clauses)
    if result is None:
        return None
    residual, implied = result
    assigned = cnf.assigned | {abs(lit) for lit in implied}
    return Cnf.trusted(cnf.num_vars, residual, cnf.aux, assigned), frozenset(implied)


def clause_components(clauses: Sequence[Clause]) -> list[list[Clause]]:
    """Group clauses into variable-disjoint components.

    Empty clauses form singleton components placed first; the others are
    ordered by their smallest variable, clauses keep input order.
    """
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    for clause in clauses:
        prev = None
        for lit in clause:
            v = abs(lit)
            if v not in parent:
                parent[v] = v
            r = find(v)
            if prev is not None and r != prev:
                if r < prev:
                    r, prev = prev, r
                parent[r] = prev
            prev = find(v)
    groups: dict[int, list[Clause]] = {}
    empties = []
    for clause in clauses:
        if not clause:
            empties.append([clause])
        else:
            groups.setdefault(find(abs(clause[0])), []).append(clause)
    # union always keeps the smaller index as root, so the root is the component minimum
    return empties + [groups[r] for r in sorted(groups)]


def connected_components(cnf: Cnf) -> list[Cnf]:
    return [
        Cnf.trusted(cnf.num_vars, group, cnf.aux, cnf.assigned)
        for group in clause_components(cnf.clauses)
    ]


# -- primal graph ------------------------------------------------------------

@dataclass(frozen=True)
class PrimalGraph:
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "PrimalGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop")
            es.add((min(u, v), max(u, v)))
        verts = frozenset(vertices) | {x for e in es for x in e}
        return cls(verts, frozenset(es))

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def primal_graph(cnf: Cnf) -> PrimalGraph:
    vertices = set()
    edges = set()
    for clause in cnf.clauses:
        vs = sorted({abs(lit) for lit in clause})
        vertices.update(vs)
        edges.update(itertools.combinations(vs, 2))
    return PrimalGraph(frozenset(vertices), frozenset(edges))
