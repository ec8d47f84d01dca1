import itertools

import numpy as np
import pytest

from conftest import Q, X, Y, Z
from dnnf_forge.cnf import Cnf
from dnnf_forge.families import delta_a, delta_b
from dnnf_forge.formula import Const, Var
from dnnf_forge.oracle import (
    MAX_VARS,
    TooManyVariables,
    TruthOracle,
    VariableMismatch,
    emf_check,
    is_satisfiable,
    oracle_count,
    oracle_equiv,
    oracle_forget,
    oracle_of,
)


def test_table_order_first_variable_most_significant():
    o = oracle_of(Var(1) & ~Var(2), [1, 2])
    # assignments 00, 01, 10, 11
    assert o.table.tolist() == [False, False, True, False]
    assert o({1: True, 2: False})


def test_contradiction_and_top():
    assert oracle_count(oracle_of(Cnf(1, ((1,), (-1,))))) == 0
    assert oracle_count(oracle_of(Cnf(3))) == 8
    assert oracle_count(oracle_of(Const(True), [1, 2, 3])) == 8


def test_fig1(fig1_cnf, fig1a, fig1b):
    o = oracle_of(fig1_cnf)
    assert oracle_count(o) == 7
    assert oracle_equiv(oracle_of(fig1a, [X, Y, Z, Q]), oracle_of(fig1b, [X, Y, Z, Q]))


def test_forget():
    o = oracle_of(Var(1) & Var(2), [1, 2])
    assert oracle_equiv(oracle_forget(o, set()), o)
    assert oracle_equiv(oracle_forget(o, {1}), oracle_of(Var(2), [2]))
    assert oracle_equiv(oracle_forget(oracle_of(delta_b(2)), {7, 8}), oracle_of(delta_a(2)))


def test_forget_order_independent():
    rng = np.random.default_rng(0)
    for _ in range(20):
        o = TruthOracle((1, 2, 3, 4), rng.random(16) < 0.4)
        a = oracle_forget(oracle_forget(o, {2}), {4})
        b = oracle_forget(oracle_forget(o, {4}), {2})
        assert oracle_equiv(a, b)
        assert oracle_equiv(a, oracle_forget(o, {2, 4}))


def test_forget_matches_brute_force():
    rng = np.random.default_rng(1)
    o = TruthOracle((1, 2, 3, 4), rng.random(16) < 0.3)
    f = oracle_forget(o, {1, 3})
    for b2, b4 in itertools.product((False, True), repeat=2):
        want = any(o({1: b1, 2: b2, 3: b3, 4: b4}) for b1 in (False, True) for b3 in (False, True))
        assert f({2: b2, 4: b4}) == want


def test_emf_check():
    x = oracle_of(Var(1), [1])
    assert emf_check(x, x)
    assert emf_check(x, oracle_of(Var(1) & Var(2), [1, 2]))
    assert not emf_check(oracle_of(Var(1), [1, 2]), oracle_of(Var(2), [1, 2]))
    with pytest.raises(VariableMismatch):
        emf_check(oracle_of(Var(3), [3]), oracle_of(Var(1), [1]))


def test_emf_count_regression():
    # f = X and g = X & (Y | -Y) agree modulo forgetting Y, with counts 1 and 2
    f = oracle_of(Var(1), [1])
    g = oracle_of(Var(1) & (Var(2) | ~Var(2)), [1, 2])
    assert emf_check(f, g)
    assert (oracle_count(f), oracle_count(g)) == (1, 2)


def test_equiv_variable_order():
    a = oracle_of(Var(1) & ~Var(2), [1, 2])
    b = oracle_of(Var(1) & ~Var(2), [2, 1])
    assert oracle_equiv(a, b)
    with pytest.raises(VariableMismatch):
        oracle_equiv(a, oracle_of(Var(1), [1]))


def test_cap():
    with pytest.raises(TooManyVariables):
        oracle_of(Cnf(MAX_VARS + 1))


def test_satisfiable():
    assert is_satisfiable(oracle_of(Var(1), [1]))
    assert not is_satisfiable(oracle_of(Cnf(1, ((),))))
