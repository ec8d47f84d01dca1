import pytest

from dnnf_forge.cnf import write_dimacs
from dnnf_forge.families import (
    MatrixVars,
    delta_a,
    delta_b,
    h,
    random_cnf,
    row_col,
    sauerhoff_f,
    sauerhoff_g,
)
from dnnf_forge.oracle import TruthOracle, emf_check, oracle_count, oracle_equiv, oracle_forget, oracle_of
from conftest import brute_models


def test_delta_a():
    assert delta_a(1).clauses == ((1, 2, 3),)
    d = delta_a(10)
    assert d.num_vars == 30 and len(d.clauses) == 1000
    assert d.clauses[:2] == ((1, 11, 21), (1, 11, 22))
    assert oracle_count(oracle_of(delta_a(2))) == len(brute_models(delta_a(2).clauses, list(range(1, 7))))
    with pytest.raises(ValueError):
        delta_a(0)


def test_delta_b():
    assert len(delta_b(1).clauses) == 3
    d = delta_b(100)
    assert d.num_vars == 302 and len(d.clauses) == 300
    assert d.aux == {301: "bva", 302: "bva"}
    assert delta_b(2).clauses == ((7, 1), (7, 2), (-7, 8, 3), (-7, 8, 4), (-8, 5), (-8, 6))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_delta_b_emf_delta_a(n):
    assert emf_check(oracle_of(delta_a(n)), oracle_of(delta_b(n)))


def test_generators_byte_stable():
    assert write_dimacs(delta_a(4)) == write_dimacs(delta_a(4))
    assert write_dimacs(random_cnf(6, 10, 3, 5)) == write_dimacs(random_cnf(6, 10, 3, 5))


def test_h():
    assert h([False] * 4)
    assert h([True, True, True])
    assert not h([True])
    assert not h([True, True, False])


def test_matrix_vars():
    m = MatrixVars.make(3, with_extra=True)
    assert m.rows()[1] == (4, 5, 6)
    assert m.cols()[0] == (1, 4, 7)
    assert m.extra == 10
    assert len(set(m.cells)) == 9


def test_sauerhoff_n1():
    f = sauerhoff_f(1)
    assert f.table.tolist() == [True, False]


def brute_row_col(n, bits):
    grid = [bits[i * n:(i + 1) * n] for i in range(n)]
    row = sum(h(r) for r in grid) % 2 == 1
    col = sum(h(c) for c in zip(*grid)) % 2 == 1
    return row, col


@pytest.mark.parametrize("n", [2, 3])
def test_sauerhoff_tables_brute_force(n):
    import itertools

    f, g = sauerhoff_f(n), sauerhoff_g(n)
    cells = MatrixVars.make(n).cells
    for bits in itertools.product((False, True), repeat=n * n):
        row, col = brute_row_col(n, bits)
        a = dict(zip(cells, bits))
        assert f(a) == (row or col)
        assert g({**a, n * n + 1: True}) == row
        assert g({**a, n * n + 1: False}) == col


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sauerhoff_emf(n):
    assert emf_check(sauerhoff_f(n), sauerhoff_g(n))


def test_sauerhoff_cap():
    with pytest.raises(ValueError):
        sauerhoff_f(5)
