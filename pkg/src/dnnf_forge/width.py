"""Jointrees, their width, and treewidth bounds on primal graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from dnnf_forge.cnf import Cnf, PrimalGraph


class JointreeError(ValueError):
    pass


@dataclass(frozen=True)
class Jointree:
    clusters: Mapping[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clusters", {v: frozenset(c) for v, c in sorted(self.clusters.items())})
        object.__setattr__(self, "edges", tuple((min(a, b), max(a, b)) for a, b in self.edges))

    def neighbours(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.clusters}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def _is_tree(jt: Jointree) -> str | None:
    verts = list(jt.clusters)
    for a, b in jt.edges:
        if a not in jt.clusters or b not in jt.clusters:
            return f"edge ({a}, {b}) references an unknown vertex"
        if a == b:
            return f"self-loop at vertex {a}"
    if len(set(jt.edges)) != len(jt.edges):
        return "duplicate edge"
    if verts and len(jt.edges) != len(verts) - 1:
        return f"{len(verts)} vertices but {len(jt.edges)} edges: not a tree"
    if verts:
        adj = jt.neighbours()
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(verts):
            return "tree is disconnected"
    return None


def jointree_validate(jt: Jointree, cnf: Cnf) -> tuple[bool, str | None]:
    """Check clause coverage and the running-intersection property."""
    problem = _is_tree(jt)
    if problem:
        return False, problem
    clusters = list(jt.clusters.items())
    for clause in cnf.clauses:
        vs = {abs(l) for l in clause}
        if not any(vs <= c for _, c in clusters):
            return False, f"clause {clause} is not covered by any cluster"
    adj = jt.neighbours()
    holders: dict[int, list[int]] = {}
    for v, c in clusters:
        for x in c:
            holders.setdefault(x, []).append(v)
    for x, verts in sorted(holders.items()):
        allowed = set(verts)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(allowed):
            return False, f"vertices holding variable {x} are not connected"
    return True, None


def jointree_width(jt: Jointree) -> int:
    if not jt.clusters:
        raise JointreeError("empty jointree has no width")
    return max(len(c) for c in jt.clusters.values()) - 1


def jointree_for_delta_b(n: int) -> Jointree:
    """Star jointree of width 2 for :func:`dnnf_forge.families.delta_b`.

    Root {A, B}; leaves {X_i, A}, {Y_i, A, B} and {Z_i, B}. The Z leaves
    carry B because the clauses they must cover are (-B | Z_i).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    a, b = 3 * n + 1, 3 * n + 2
    clusters = {0: frozenset((a, b))}
    edges = []
    vid = 1
    for i in range(1, n + 1):
        for cluster in ((i, a), (n + i, a, b), (2 * n + i, b)):
            clusters[vid] = frozenset(cluster)
            edges.append((0, vid))
            vid += 1
    return Jointree(clusters, tuple(edges))


def extend_jointree(jt: Jointree, v: int) -> Jointree:
    """Add ``v`` to every cluster (width grows by exactly one)."""
    if not jt.clusters:
        raise JointreeError("cannot extend an empty jointree")
    if any(v in c for c in jt.clusters.values()):
        raise JointreeError(f"variable {v} already present")
    return Jointree({k: c | {v} for k, c in jt.clusters.items()}, jt.edges)


def jointree_from_order(graph: PrimalGraph, order: Sequence[int]) -> Jointree:
    """Jointree induced by eliminating ``order`` on ``graph``.

    Each eliminated vertex contributes the cluster {v} + its neighbours at
    elimination time, attached to the cluster of the earliest-eliminated
    of those neighbours.
    """
    adj = graph.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    if set(pos) != set(graph.vertices):
        raise ValueError("order must list every vertex exactly once")
    if not order:
        return Jointree({0: frozenset()})
    clusters = {}
    parent_of = {}
    for i, v in enumerate(order):
        nb = adj[v]
        clusters[i] = frozenset(nb | {v})
        if nb:
            parent_of[i] = min(pos[u] for u in nb)
        for a, b in itertools.combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        for u in nb:
            adj[u].discard(v)
        del adj[v]
    edges = [(i, p) for i, p in parent_of.items()]
    # vertices without a later neighbour start new subtrees; chain them up
    roots = [i for i in clusters if i not in parent_of]
    edges.extend((roots[k], roots[k + 1]) for k in range(len(roots) - 1))
    return Jointree(clusters, tuple(edges))


def jointree_for_cnf(cnf: Cnf) -> Jointree:
    """A valid jointree from the min-fill elimination order."""
    from dnnf_forge.cnf import primal_graph

    g = primal_graph(cnf)
    _, order = treewidth_upper(g)
    return jointree_from_order(g, order)


# -- text format -------------------------------------------------------------

def write_jointree(jt: Jointree) -> str:
    lines = [f"v {v} : " + " ".join(map(str, sorted(c))) for v, c in jt.clusters.items()]
    lines = [ln.rstrip() for ln in lines]
    lines.extend(f"e {a} {b}" for a, b in jt.edges)
    return "\n".join(lines) + "\n"


def parse_jointree(text: str) -> Jointree:
    clusters: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts:
            continue
        try:
            if parts[0] == "v":
                if len(parts) < 3 or parts[2] != ":":
                    raise JointreeError(f"line {lineno}: expected 'v <id> : <vars>'")
                vid = int(parts[1])
                if vid in clusters:
                    raise JointreeError(f"line {lineno}: duplicate vertex {vid}")
                clusters[vid] = frozenset(int(x) for x in parts[3:])
            elif parts[0] == "e":
                if len(parts) != 3:
                    raise JointreeError(f"line {lineno}: expected 'e <id> <id>'")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise JointreeError(f"line {lineno}: unknown tag {parts[0]!r}")
        except ValueError as exc:
            if isinstance(exc, JointreeError):
                raise
            raise JointreeError(f"line {lineno}: non-integer field") from None
    return Jointree(clusters, tuple(edges))


# -- treewidth ---------------------------------------------------------------

def treewidth_upper(g: PrimalGraph) -> tuple[int, list[int]]:
    """Min-fill greedy elimination; ties by fewest fill-in, then smallest vertex.

    Returns the width of the elimination order (an upper bound on the
    treewidth; -1 for the empty graph) and the order itself.
    """
    adj = g.adjacency()
    order = []
    width = -1
    while adj:
        best = None
        for v in sorted(adj):
            nb = adj[v]
            fill = 0
            nbl = list(nb)
            for i in range(len(nbl)):
                ai = adj[nbl[i]]
                for j in range(i + 1, len(nbl)):
                    if nbl[j] not in ai:
                        fill += 1
            if best is None or fill < best[0]:
                best = (fill, v)
                if fill == 0:
                    break
        v = best[1]
        nb = adj.pop(v)
        width = max(width, len(nb))
        for a, b in itertools.combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        for u in nb:
            adj[u].discard(v)
        order.append(v)
    return width, order


EXACT_LIMIT = 10


def treewidth_exact_small(g: PrimalGraph) -> int:
    """Exact treewidth by dynamic programming over vertex subsets.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
    are the vertices outside S + v reachable from v through S.
    """
    verts = sorted(g.vertices)
    n = len(verts)
    if n > EXACT_LIMIT:
        raise ValueError(f"{n} vertices exceed the exact-treewidth limit of {EXACT_LIMIT}")
    if n == 0:
        return -1
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * n
    for a, b in g.edges:
        nbr[idx[a]] |= 1 << idx[b]
        nbr[idx[b]] |= 1 << idx[a]

    def q(s: int, v: int) -> int:
        seen = 1 << v
        frontier = [v]
        out = 0
        while frontier:
            u = frontier.pop()
            m = nbr[u] & ~seen
            seen |= m
            while m:
                low = m & -m
                w = low.bit_length() - 1
                m ^= low
                if s >> w & 1:
                    frontier.append(w)
                else:
                    out += 1
        return out

    @lru_cache(maxsize=None)
    def tw(s: int) -> int:
        if s == 0:
            return -1
        best = n
        m = s
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            rest = s ^ low
            best = min(best, max(tw(rest), q(rest, v)))
        return best

    return tw((1 << n) - 1)
