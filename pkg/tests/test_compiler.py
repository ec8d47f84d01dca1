import random

import pytest

from conftest import Q, X, Y, Z, brute_models
from dnnf_forge.cnf import Cnf
from dnnf_forge.compiler import CompileTimeout, Compiler, branch_heuristic, compile_cnf
from dnnf_forge.families import delta_a, random_cnf
from dnnf_forge.nnf import Kind, check_decomposable, check_deterministic, model_count, smooth, stats
from dnnf_forge.oracle import oracle_equiv, oracle_of


def test_trivial_inputs():
    assert compile_cnf(Cnf(3)).nodes[-1].kind is Kind.TRUE
    dag = compile_cnf(Cnf(2, ((1, 2), ())))
    assert dag.nodes[dag.root].kind is Kind.FALSE


def test_fig1(fig1_cnf):
    dag = compile_cnf(fig1_cnf)
    assert check_decomposable(dag)[0]
    assert check_deterministic(dag, "structural")[0]
    assert oracle_equiv(oracle_of(dag, [X, Y, Z, Q]), oracle_of(fig1_cnf))
    assert model_count(smooth(dag), [X, Y, Z, Q]) == 7


def test_branch_heuristic():
    assert branch_heuristic(Cnf(3, ((1, 2), (1, 3)))) == 1
    assert branch_heuristic(Cnf(4, ((3, 4), (1, 2)))) == 1
    assert branch_heuristic(Cnf(1, ((1,),))) == 1
    with pytest.raises(ValueError):
        branch_heuristic(Cnf(2))


def test_random_equivalence_and_counts():
    rng = random.Random(17)
    for _ in range(150):
        n = rng.randint(1, 12)
        cnf = random_cnf(n, rng.randint(0, 30), 3, rng)
        dag = compile_cnf(cnf)
        assert check_decomposable(dag)[0]
        assert check_deterministic(dag, "structural")[0]
        variables = list(range(1, n + 1))
        assert oracle_equiv(oracle_of(dag, variables), oracle_of(cnf))
        assert model_count(smooth(dag, over=variables), variables) == len(brute_models(cnf.clauses, variables))


def test_cache_soundness():
    rng = random.Random(18)
    for _ in range(60):
        n = rng.randint(2, 10)
        cnf = random_cnf(n, rng.randint(0, 25), 3, rng)
        a = Compiler(cache=True).compile(cnf)
        b = Compiler(cache=False).compile(cnf)
        variables = list(range(1, n + 1))
        assert oracle_equiv(oracle_of(a, variables), oracle_of(b, variables))


def test_cache_is_used():
    c = Compiler()
    c.compile(delta_a(4))
    assert c.cache.hits > 0


def test_timeout():
    with pytest.raises(CompileTimeout):
        Compiler(timeout=0.0).compile(delta_a(6))


def test_output_is_deterministic_across_runs():
    assert compile_cnf(delta_a(5)) == compile_cnf(delta_a(5))


def test_plain_delta_a_sizes_frozen():
    # regression values for the internal compiler on the ternary grid
    s = stats(compile_cnf(delta_a(10)))
    assert (s.node_count, s.edge_count) == (127, 162)
