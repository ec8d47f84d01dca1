import itertools
import random

import pytest

from dnnf_forge.cnf import Cnf, PrimalGraph, primal_graph
from dnnf_forge.families import delta_a, delta_b, random_cnf
from dnnf_forge.transform import bva
from dnnf_forge.width import (
    Jointree,
    JointreeError,
    extend_jointree,
    jointree_for_cnf,
    jointree_for_delta_b,
    jointree_from_order,
    jointree_validate,
    jointree_width,
    parse_jointree,
    treewidth_exact_small,
    treewidth_upper,
    write_jointree,
)


def complete(n):
    return PrimalGraph.from_edges(range(1, n + 1), itertools.combinations(range(1, n + 1), 2))


def path(n):
    return PrimalGraph.from_edges(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def test_delta_b_jointree():
    jt = jointree_for_delta_b(2)
    assert jointree_validate(jt, delta_b(2)) == (True, None)
    assert jointree_width(jt) == 2
    one = jointree_for_delta_b(1)
    assert len(one.clusters) == 4 and jointree_width(one) == 2
    three = jointree_for_delta_b(3)
    assert len(three.clusters) == 10
    assert all(len(c) <= 3 for v, c in three.clusters.items() if v)


def test_removing_a_from_root_breaks_connectivity():
    jt = jointree_for_delta_b(2)
    a = 7
    clusters = dict(jt.clusters)
    clusters[0] = clusters[0] - {a}
    ok, why = jointree_validate(Jointree(clusters, jt.edges), delta_b(2))
    assert not ok and "variable 7" in why


def test_uncovered_clause_and_bad_trees():
    cnf = Cnf(3, ((1, 2), (2, 3)))
    ok, why = jointree_validate(Jointree({0: {1, 2}, 1: {3}}, ((0, 1),)), cnf)
    assert not ok and "not covered" in why
    assert not jointree_validate(Jointree({0: {1, 2, 3}, 1: {1}}, ()), cnf)[0]
    assert not jointree_validate(Jointree({0: {1, 2, 3}, 1: {1}, 2: {2}}, ((0, 1), (1, 2), (0, 2))), cnf)[0]


def test_single_vertex_jointree():
    cnf = random_cnf(6, 10, 3, 1)
    jt = Jointree({0: set(range(1, 7))})
    assert jointree_validate(jt, cnf)[0]
    assert jointree_width(jt) == 5
    assert jointree_width(Jointree({0: {1}})) == 0
    with pytest.raises(JointreeError):
        jointree_width(Jointree({}))


def test_extend_jointree():
    jt = Jointree({0: {1}})
    ext = extend_jointree(jt, 2)
    assert ext.clusters[0] == {1, 2}
    big = jointree_for_delta_b(3)
    assert jointree_width(extend_jointree(extend_jointree(big, 20), 21)) == 4
    with pytest.raises(JointreeError):
        extend_jointree(jt, 1)


def test_treewidth_upper_examples():
    tree = PrimalGraph.from_edges([], [(1, 2), (1, 3), (3, 4), (3, 5)])
    assert treewidth_upper(tree)[0] == 1
    assert treewidth_upper(complete(5))[0] == 4
    assert treewidth_upper(primal_graph(delta_b(10)))[0] <= 3
    assert treewidth_upper(PrimalGraph(frozenset(), frozenset()))[0] == -1


def test_treewidth_exact_examples():
    assert treewidth_exact_small(complete(4)) == 3
    assert treewidth_exact_small(path(5)) == 1
    with pytest.raises(ValueError):
        treewidth_exact_small(path(11))


def test_treewidth_delta_a_2():
    # K_{2,2,2}: the octahedron, treewidth 4
    assert treewidth_exact_small(primal_graph(delta_a(2))) == 4


def brute_treewidth(g):
    """Minimum over all elimination orders; tiny graphs only."""
    best = None
    for order in itertools.permutations(sorted(g.vertices)):
        adj = g.adjacency()
        width = -1
        for v in order:
            nb = adj.pop(v)
            width = max(width, len(nb))
            for a, b in itertools.combinations(nb, 2):
                adj[a].add(b)
                adj[b].add(a)
            for u in nb:
                adj[u].discard(v)
        best = width if best is None else min(best, width)
    return best


def random_graph(rng, n, p):
    es = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p]
    return PrimalGraph.from_edges(range(1, n + 1), es)


def test_exact_matches_brute_force_and_bounds_upper():
    rng = random.Random(6)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6), rng.random())
        exact = treewidth_exact_small(g)
        assert exact == brute_treewidth(g)
        assert exact <= treewidth_upper(g)[0]
    for _ in range(60):
        g = random_graph(rng, rng.randint(7, 10), rng.random())
        assert treewidth_exact_small(g) <= treewidth_upper(g)[0]


def test_jointree_from_order_is_valid():
    rng = random.Random(10)
    for _ in range(60):
        cnf = random_cnf(rng.randint(1, 12), rng.randint(0, 20), 4, rng)
        g = primal_graph(cnf)
        width, order = treewidth_upper(g)
        jt = jointree_from_order(g, order)
        assert jointree_validate(jt, cnf)[0]
        if g.vertices:
            assert jointree_width(jt) == width
        assert jointree_validate(jointree_for_cnf(cnf), cnf)[0]


def test_bva_width_bound():
    rng = random.Random(14)
    seen = 0
    for _ in range(200):
        n = rng.randint(3, 10)
        cnf = random_cnf(n, rng.randint(8, 40), 3, rng)
        jt = jointree_for_cnf(cnf)
        w = jointree_width(jt)
        for k in (1, 2, 3):
            out = bva(cnf, k)
            new = sorted(set(out.aux) - set(cnf.aux))
            if len(new) != k:
                continue
            seen += 1
            ext = jt
            for v in new:
                ext = extend_jointree(ext, v)
            assert jointree_validate(ext, out)[0]
            assert jointree_width(ext) == w + k
    assert seen > 20


def test_text_roundtrip():
    jt = jointree_for_delta_b(2)
    text = write_jointree(jt)
    assert text.startswith("v 0 : 7 8\n")
    back = parse_jointree(text)
    assert back == jt
    assert write_jointree(back) == text


@pytest.mark.parametrize("text", ["v 0 1 2\n", "x 1\n", "v 0 : 1\nv 0 : 2\n", "e 1\n", "v a : 1\n"])
def test_text_errors(text):
    with pytest.raises(JointreeError):
        parse_jointree(text)
