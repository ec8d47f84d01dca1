"""Brute-force truth tables: the ground truth every other module is checked against.

A table over variables ``(v1, ..., vn)`` is indexed lexicographically with
``v1`` as the most significant bit, which is exactly C-order on an array of
shape ``(2,) * n`` whose axis ``i`` belongs to ``vi``. Sources are evaluated by
numpy broadcasting: a literal is an array with extent 2 on its own axis and 1
elsewhere, so intermediate results only grow along the axes they mention.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from dnnf_forge.cnf import Cnf

MAX_VARS = 24


class TooManyVariables(ValueError):
    pass


class VariableMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruthOracle:
    variables: tuple[int, ...]
    table: np.ndarray

    def __post_init__(self):
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise ValueError("duplicate variables")
        table = np.asarray(self.table, dtype=bool).reshape(-1)
        if table.size != 1 << n:
            raise ValueError(f"table has {table.size} entries, expected {1 << n}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_function(cls, variables: Sequence[int], fn: Callable[[dict[int, np.ndarray]], np.ndarray]) -> "TruthOracle":
        """Tabulate ``fn`` given one broadcastable 0/1 array per variable."""
        variables = tuple(variables)
        _check_size(len(variables))
        cols = {v: _axis_array(i, len(variables)) for i, v in enumerate(variables)}
        values = np.broadcast_to(np.asarray(fn(cols), dtype=bool), (2,) * len(variables))
        return cls(variables, values.copy())

    @property
    def cube(self) -> np.ndarray:
        return self.table.reshape((2,) * len(self.variables))

    def __call__(self, assignment: dict[int, bool]) -> bool:
        return bool(self.cube[tuple(int(assignment[v]) for v in self.variables)])

    def __repr__(self):
        return f"TruthOracle(variables={self.variables}, models={oracle_count(self)})"


def _check_size(n: int):
    if n > MAX_VARS:
        raise TooManyVariables(f"{n} variables exceed the oracle cap of {MAX_VARS}")


def _axis_array(axis: int, n: int) -> np.ndarray:
    shape = [1] * n
    shape[axis] = 2
    return np.array([0, 1], dtype=np.uint8).reshape(shape)


class _Space:
    """Axis bookkeeping for one evaluation."""

    def __init__(self, variables: Sequence[int]):
        self.variables = tuple(variables)
        _check_size(len(self.variables))
        self.n = len(self.variables)
        self.axis = {v: i for i, v in enumerate(self.variables)}
        self.true = np.ones((1,) * self.n, dtype=bool)
        self.false = np.zeros((1,) * self.n, dtype=bool)
        self._lits: dict[int, np.ndarray] = {}

    def literal(self, lit: int) -> np.ndarray:
        arr = self._lits.get(lit)
        if arr is None:
            try:
                axis = self.axis[abs(lit)]
            except KeyError:
                raise VariableMismatch(f"variable {abs(lit)} is not in the oracle's variable list") from None
            shape = [1] * self.n
            shape[axis] = 2
            values = [False, True] if lit > 0 else [True, False]
            arr = np.array(values, dtype=bool).reshape(shape)
            self._lits[lit] = arr
        return arr

    def finish(self, arr: np.ndarray) -> TruthOracle:
        return TruthOracle(self.variables, np.broadcast_to(arr, (2,) * self.n).copy())


# -- builders ----------------------------------------------------------------

def oracle_of(source, variables: Sequence[int] | None = None) -> TruthOracle:
    """Tabulate a Cnf, NnfDag or Formula.

    Default variable lists: the Cnf's unassigned universe, the variables a DAG
    mentions, the variables a formula mentions.
    """
    from dnnf_forge.formula import Formula
    from dnnf_forge.nnf import NnfDag

    if isinstance(source, Cnf):
        return _cnf_oracle(source, source.variables if variables is None else variables)
    if isinstance(source, NnfDag):
        if variables is None:
            variables = sorted(source.var_sets[source.root])
        return _nnf_oracle(source, variables)
    if isinstance(source, Formula):
        if variables is None:
            variables = sorted(source.variables())
        space = _Space(variables)
        return space.finish(_formula_array(source, space))
    raise TypeError(f"cannot build an oracle for {type(source).__name__}")


def _cnf_oracle(cnf: Cnf, variables: Sequence[int]) -> TruthOracle:
    space = _Space(variables)
    out = np.ones((2,) * space.n, dtype=bool)
    for clause in cnf.clauses:
        if not clause:
            out[...] = False
            break
        out &= functools.reduce(np.logical_or, (space.literal(lit) for lit in clause))
    return TruthOracle(space.variables, out)


def nnf_node_arrays(dag, space: _Space, visit=None) -> np.ndarray:
    """Bottom-up evaluation of every reachable node; ``visit(i, arrays)`` sees each
    node right after its array is computed. Arrays are released once no parent
    needs them."""
    from dnnf_forge.nnf import Kind

    reach = dag.reachable()
    pending = [0] * len(dag.nodes)
    for i in reach:
        for c in dag.nodes[i].children:
            pending[c] += 1
    arrays: dict[int, np.ndarray] = {}
    for i in sorted(reach):
        node = dag.nodes[i]
        if node.kind is Kind.LIT:
            arr = space.literal(node.literal)
        elif node.kind is Kind.TRUE:
            arr = space.true
        elif node.kind is Kind.FALSE:
            arr = space.false
        elif node.kind is Kind.AND:
            arr = functools.reduce(np.logical_and, (arrays[c] for c in node.children))
        else:
            arr = functools.reduce(np.logical_or, (arrays[c] for c in node.children))
        arrays[i] = arr
        if visit is not None:
            visit(i, arrays)
        for c in node.children:
            pending[c] -= 1
            if pending[c] == 0:
                del arrays[c]
    return arrays[dag.root]


def _nnf_oracle(dag, variables: Sequence[int]) -> TruthOracle:
    space = _Space(variables)
    return space.finish(nnf_node_arrays(dag, space))


def _formula_array(f, space: _Space) -> np.ndarray:
    from dnnf_forge import formula as fm

    if isinstance(f, fm.Var):
        return space.literal(f.index)
    if isinstance(f, fm.Const):
        return space.true if f.value else space.false
    if isinstance(f, fm.Not):
        return ~_formula_array(f.operand, space)
    if isinstance(f, fm.And):
        return functools.reduce(np.logical_and, (_formula_array(g, space) for g in f.operands))
    if isinstance(f, fm.Or):
        return functools.reduce(np.logical_or, (_formula_array(g, space) for g in f.operands))
    if isinstance(f, fm.Xor):
        return _formula_array(f.left, space) ^ _formula_array(f.right, space)
    if isinstance(f, fm.Iff):
        return _formula_array(f.left, space) == _formula_array(f.right, space)
    raise TypeError(f"unknown formula node {f!r}")


# -- operations --------------------------------------------------------------

def oracle_forget(o: TruthOracle, variables: Iterable[int]) -> TruthOracle:
    """Existentially quantify ``variables``: disjunction over their assignments."""
    drop = set(variables)
    missing = drop - set(o.variables)
    if missing:
        raise VariableMismatch(f"cannot forget variables {sorted(missing)} not in the oracle")
    if not drop:
        return o
    axes = tuple(i for i, v in enumerate(o.variables) if v in drop)
    kept = tuple(v for v in o.variables if v not in drop)
    return TruthOracle(kept, o.cube.any(axis=axes))


def _aligned(o: TruthOracle, order: Sequence[int]) -> np.ndarray:
    if tuple(order) == o.variables:
        return o.cube
    pos = {v: i for i, v in enumerate(o.variables)}
    return o.cube.transpose([pos[v] for v in order])


def oracle_equiv(a: TruthOracle, b: TruthOracle) -> bool:
    """Pointwise equality; the variable sets must agree (order may differ)."""
    if set(a.variables) != set(b.variables):
        raise VariableMismatch(f"variable sets differ: {a.variables} vs {b.variables}")
    return bool(np.array_equal(a.cube, _aligned(b, a.variables)))


def oracle_count(o: TruthOracle) -> int:
    return int(np.count_nonzero(o.table))


def emf_check(f: TruthOracle, g: TruthOracle) -> bool:
    """True iff f is equivalent modulo forgetting to g: f == exists Y. g with
    Y the variables of g that f does not have."""
    extra = set(f.variables) - set(g.variables)
    if extra:
        raise VariableMismatch(f"variables {sorted(extra)} of f are missing from g")
    fs = set(f.variables)
    return oracle_equiv(f, oracle_forget(g, [v for v in g.variables if v not in fs]))


def is_satisfiable(o: TruthOracle) -> bool:
    return bool(o.table.any())
