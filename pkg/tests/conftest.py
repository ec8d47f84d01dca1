import itertools
import random
from pathlib import Path

import pytest

from dnnf_forge.cnf import Cnf, parse_dimacs
from dnnf_forge.formula import And, Const, Formula, Iff, Not, Or, Var, Xor
from dnnf_forge.nnf import NnfDag, parse_nnf

GOLDEN = Path(__file__).parent / "golden"

X, Y, Z, Q = 1, 2, 3, 4


def golden(name: str) -> bytes:
    return (GOLDEN / name).read_bytes()


@pytest.fixture
def fig1_cnf() -> Cnf:
    return parse_dimacs(golden("fig1.cnf"))


@pytest.fixture
def fig1a() -> NnfDag:
    return parse_nnf(golden("fig1a.nnf"))


@pytest.fixture
def fig1b() -> NnfDag:
    return parse_nnf(golden("fig1b.nnf"))


@pytest.fixture
def fig2b() -> NnfDag:
    return parse_nnf(golden("fig2b.nnf"))


def brute_models(clauses, variables):
    """Models as tuples of booleans in ``variables`` order; no numpy."""
    out = []
    for bits in itertools.product((False, True), repeat=len(variables)):
        val = dict(zip(variables, bits))
        if all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses):
            out.append(bits)
    return out


def random_formula(rng: random.Random, num_vars: int, depth: int = 3) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.05:
            return Const(rng.random() < 0.5)
        v = Var(rng.randint(1, num_vars))
        return Not(v) if rng.random() < 0.3 else v
    kind = rng.choice(("and", "or", "not", "xor", "iff"))
    if kind == "not":
        return Not(random_formula(rng, num_vars, depth - 1))
    if kind in ("and", "or"):
        ops = tuple(random_formula(rng, num_vars, depth - 1) for _ in range(rng.randint(1, 3)))
        return And(ops) if kind == "and" else Or(ops)
    a, b = random_formula(rng, num_vars, depth - 1), random_formula(rng, num_vars, depth - 1)
    return Xor(a, b) if kind == "xor" else Iff(a, b)


# acceptance lines, echoed in the terminal summary so they reach the test log
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
