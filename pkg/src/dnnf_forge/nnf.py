"""NNF DAGs stored as topologically ordered arenas, plus the DNNF queries.

Children always precede their parents, so every pass here is a single sweep
over the arena. File I/O follows the c2d ``.nnf`` format, where ``A 0`` is
the constant true and ``O 0 0`` the constant false.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class NnfError(ValueError):
    pass


class PreconditionError(ValueError):
    """A query was asked of a DAG that lacks the property it relies on."""


class Kind(enum.Enum):
    LIT = "L"
    TRUE = "T"
    FALSE = "F"
    AND = "A"
    OR = "O"


@dataclass(frozen=True, slots=True)
class Node:
    kind: Kind
    children: tuple[int, ...] = ()
    literal: int = 0
    decision: int = 0


TRUE_NODE = Node(Kind.TRUE)
FALSE_NODE = Node(Kind.FALSE)


@dataclass
class PassCounter:
    """Instrumentation for linear passes: counts arena nodes touched."""

    visits: int = 0


@dataclass(frozen=True)
class NnfStats:
    node_count: int
    edge_count: int


@dataclass(frozen=True, eq=False)
class NnfDag:
    nodes: tuple[Node, ...]
    root: int
    num_vars: int = 0

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not nodes:
            raise NnfError("empty arena")
        if not 0 <= self.root < len(nodes):
            raise NnfError(f"root {self.root} outside arena")
        top = 0
        for i, node in enumerate(nodes):
            if node.kind in (Kind.AND, Kind.OR):
                if not node.children:
                    raise NnfError(f"node {i}: AND/OR without children")
                for c in node.children:
                    if not 0 <= c < i:
                        raise NnfError(f"node {i}: child {c} is not an earlier node")
            elif node.kind is Kind.LIT:
                if node.literal == 0:
                    raise NnfError(f"node {i}: literal 0")
                top = max(top, abs(node.literal))
        if self.num_vars < top:
            object.__setattr__(self, "num_vars", top)

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, NnfDag):
            return NotImplemented
        return (self.nodes, self.root, self.num_vars) == (other.nodes, other.root, other.num_vars)

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def var_sets(self) -> list[frozenset[int]]:
        empty: frozenset[int] = frozenset()
        out: list[frozenset[int]] = []
        for node in self.nodes:
            if node.kind is Kind.LIT:
                out.append(frozenset((abs(node.literal),)))
            elif node.children:
                if len(node.children) == 1:
                    out.append(out[node.children[0]])
                else:
                    out.append(frozenset().union(*(out[c] for c in node.children)))
            else:
                out.append(empty)
        return out

    def reachable(self) -> set[int]:
        seen = {self.root}
        stack = [self.root]
        while stack:
            for c in self.nodes[stack.pop()].children:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return seen

    def mentioned(self) -> frozenset[int]:
        return self.var_sets[self.root]


class NnfBuilder:
    """Append-only arena with optional hash-consing and constant folding."""

    def __init__(self, *, simplify: bool = True):
        self.nodes: list[Node] = []
        self.simplify = simplify
        self._unique: dict[Node, int] = {}

    def add(self, node: Node) -> int:
        if self.simplify:
            found = self._unique.get(node)
            if found is not None:
                return found
        self.nodes.append(node)
        idx = len(self.nodes) - 1
        if self.simplify:
            self._unique[node] = idx
        return idx

    def lit(self, literal: int) -> int:
        return self.add(Node(Kind.LIT, literal=literal))

    def true(self) -> int:
        return self.add(TRUE_NODE)

    def false(self) -> int:
        return self.add(FALSE_NODE)

    def conj(self, children: Sequence[int]) -> int:
        if self.simplify:
            kept = []
            for c in children:
                kind = self.nodes[c].kind
                if kind is Kind.FALSE:
                    return self.false()
                if kind is not Kind.TRUE:
                    kept.append(c)
            if not kept:
                return self.true()
            if len(kept) == 1:
                return kept[0]
            children = kept
        if not children:
            return self.true()
        return self.add(Node(Kind.AND, tuple(children)))

    def disj(self, children: Sequence[int], decision: int = 0) -> int:
        if self.simplify:
            kept = []
            for c in children:
                kind = self.nodes[c].kind
                if kind is Kind.TRUE:
                    return self.true()
                if kind is not Kind.FALSE:
                    kept.append(c)
            if not kept:
                return self.false()
            if len(kept) == 1:
                return kept[0]
            children = kept
        if not children:
            return self.false()
        return self.add(Node(Kind.OR, tuple(children), decision=decision))

    def build(self, root: int, num_vars: int = 0) -> NnfDag:
        return NnfDag(tuple(self.nodes), root, num_vars)


# -- file format -------------------------------------------------------------

def parse_nnf(text: str | bytes) -> NnfDag:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and ln[0] != "c"]
    if not lines or lines[0][0] != "nnf" or len(lines[0]) != 4:
        raise NnfError("missing 'nnf v e n' header")
    try:
        v, e, n = map(int, lines[0][1:])
    except ValueError:
        raise NnfError("malformed header") from None
    body = lines[1:]
    if len(body) != v:
        raise NnfError(f"header declares {v} nodes, found {len(body)}")
    nodes = []
    edges = 0
    for i, parts in enumerate(body):
        tag = parts[0]
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError:
            raise NnfError(f"node {i}: non-integer field") from None
        if tag == "L":
            if len(nums) != 1 or nums[0] == 0:
                raise NnfError(f"node {i}: malformed literal line")
            nodes.append(Node(Kind.LIT, literal=nums[0]))
            continue
        if tag == "A":
            if not nums or len(nums) != nums[0] + 1:
                raise NnfError(f"node {i}: child count mismatch")
            decision, kids = 0, nums[1:]
        elif tag == "O":
            if len(nums) < 2 or len(nums) != nums[1] + 2:
                raise NnfError(f"node {i}: child count mismatch")
            decision, kids = nums[0], nums[2:]
        else:
            raise NnfError(f"node {i}: unknown line tag {tag!r}")
        for c in kids:
            if not 0 <= c < i:
                raise NnfError(f"node {i}: forward reference to {c}")
        edges += len(kids)
        if not kids:
            nodes.append(TRUE_NODE if tag == "A" else FALSE_NODE)
        elif tag == "A":
            nodes.append(Node(Kind.AND, tuple(kids)))
        else:
            nodes.append(Node(Kind.OR, tuple(kids), decision=decision))
    if edges != e:
        raise NnfError(f"header declares {e} edges, found {edges}")
    top = max((abs(nd.literal) for nd in nodes if nd.kind is Kind.LIT), default=0)
    if top > n:
        raise NnfError(f"literal over variable {top} exceeds declared {n} variables")
    if not nodes:
        raise NnfError("no nodes")
    return NnfDag(tuple(nodes), len(nodes) - 1, n)


def write_nnf(dag: NnfDag) -> bytes:
    """Serialize the arena as is; the root must be the last node."""
    if dag.root != len(dag.nodes) - 1:
        dag = compact(dag)
    edges = sum(len(nd.children) for nd in dag.nodes)
    out = [f"nnf {len(dag.nodes)} {edges} {dag.num_vars}"]
    for nd in dag.nodes:
        if nd.kind is Kind.LIT:
            out.append(f"L {nd.literal}")
        elif nd.kind is Kind.TRUE:
            out.append("A 0")
        elif nd.kind is Kind.FALSE:
            out.append("O 0 0")
        elif nd.kind is Kind.AND:
            out.append(f"A {len(nd.children)} " + " ".join(map(str, nd.children)))
        else:
            out.append(f"O {nd.decision} {len(nd.children)} " + " ".join(map(str, nd.children)))
    return ("\n".join(out) + "\n").encode("ascii")


def compact(dag: NnfDag) -> NnfDag:
    """Keep only nodes reachable from the root, order preserved; root last."""
    keep = sorted(dag.reachable())
    remap = {old: new for new, old in enumerate(keep)}
    nodes = []
    for old in keep:
        nd = dag.nodes[old]
        if nd.children:
            nd = Node(nd.kind, tuple(remap[c] for c in nd.children), nd.literal, nd.decision)
        nodes.append(nd)
    return NnfDag(tuple(nodes), remap[dag.root], dag.num_vars)


def stats(dag: NnfDag) -> NnfStats:
    reach = dag.reachable()
    return NnfStats(len(reach), sum(len(dag.nodes[i].children) for i in reach))


# -- structural properties ---------------------------------------------------

@dataclass(frozen=True)
class Violation:
    node: int
    variable: int = 0
    reason: str = ""


def check_decomposable(dag: NnfDag) -> tuple[bool, Violation | None]:
    vs = dag.var_sets
    for i, node in enumerate(dag.nodes):
        if node.kind is not Kind.AND or len(node.children) < 2:
            continue
        seen: set[int] = set()
        for c in node.children:
            shared = seen & vs[c]
            if shared:
                var = min(shared)
                return False, Violation(i, var, f"variable {var} shared by conjuncts of node {i}")
            seen |= vs[c]
    return True, None


def is_decomposable(dag: NnfDag) -> bool:
    return check_decomposable(dag)[0]


_ALL = None  # stands for "every literal": what the false node asserts


def _asserted_literals(dag: NnfDag) -> list[frozenset[int] | None]:
    """Literals every model of each node must satisfy, found syntactically."""
    out: list[frozenset[int] | None] = []
    for node in dag.nodes:
        if node.kind is Kind.LIT:
            out.append(frozenset((node.literal,)))
        elif node.kind is Kind.TRUE:
            out.append(frozenset())
        elif node.kind is Kind.FALSE:
            out.append(_ALL)
        elif node.kind is Kind.AND:
            kids = [out[c] for c in node.children]
            if any(k is _ALL for k in kids):
                out.append(_ALL)
            else:
                out.append(frozenset().union(*kids))
        else:
            kids = [out[c] for c in node.children if out[c] is not _ALL]
            if not kids:
                out.append(_ALL)
            else:
                out.append(frozenset.intersection(*kids))
    return out


def _clash(a: frozenset[int] | None, b: frozenset[int] | None, decision: int) -> bool:
    if a is _ALL or b is _ALL:
        return True
    if decision and ((decision in a and -decision in b) or (-decision in a and decision in b)):
        return True
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    return any(-lit in large for lit in small)


def check_deterministic(dag: NnfDag, mode: str = "structural") -> tuple[bool, Violation | None]:
    """Check every reachable OR node for pairwise inconsistent disjuncts.

    ``structural`` is sound but incomplete: two disjuncts count as
    inconsistent when they syntactically assert complementary literals (on
    the recorded decision variable when there is one). ``oracle`` decides
    pairwise inconsistency exactly by truth tables and is capped at
    :data:`dnnf_forge.oracle.MAX_VARS` mentioned variables.
    """
    if mode == "structural":
        asserted = _asserted_literals(dag)
        for i in sorted(dag.reachable()):
            node = dag.nodes[i]
            if node.kind is not Kind.OR or len(node.children) < 2:
                continue
            kids = node.children
            for a in range(len(kids)):
                for b in range(a + 1, len(kids)):
                    if not _clash(asserted[kids[a]], asserted[kids[b]], node.decision):
                        return False, Violation(i, node.decision, f"disjuncts {kids[a]} and {kids[b]} of node {i} are not structurally exclusive")
        return True, None
    if mode == "oracle":
        return _oracle_deterministic(dag)
    raise ValueError(f"unknown determinism check mode {mode!r}")


def _oracle_deterministic(dag: NnfDag) -> tuple[bool, Violation | None]:
    from dnnf_forge.oracle import _Space, nnf_node_arrays

    space = _Space(sorted(dag.mentioned()))
    found: list[Violation] = []

    def visit(i, arrays):
        if found:
            return
        node = dag.nodes[i]
        if node.kind is not Kind.OR or len(node.children) < 2:
            return
        kids = node.children
        for a in range(len(kids)):
            for b in range(a + 1, len(kids)):
                if (arrays[kids[a]] & arrays[kids[b]]).any():
                    found.append(Violation(i, 0, f"disjuncts {kids[a]} and {kids[b]} of node {i} share a model"))
                    return

    nnf_node_arrays(dag, space, visit)
    return (False, found[0]) if found else (True, None)


def is_deterministic(dag: NnfDag, mode: str = "structural") -> bool:
    return check_deterministic(dag, mode)[0]


def is_smooth(dag: NnfDag) -> bool:
    vs = dag.var_sets
    for node in dag.nodes:
        if node.kind is Kind.OR:
            first = vs[node.children[0]]
            if any(vs[c] != first for c in node.children[1:]):
                return False
    return True


# -- transformations ---------------------------------------------------------

def forget(dag: NnfDag, variables: Iterable[int], counter: PassCounter | None = None) -> NnfDag:
    """Existentially quantify ``variables`` by replacing their literal leaves
    with true. One visit per arena node; sound on decomposable input only,
    and determinism is not preserved in general."""
    drop = frozenset(variables)
    nodes = list(dag.nodes)
    for i, node in enumerate(nodes):
        if node.kind is Kind.LIT and abs(node.literal) in drop:
            nodes[i] = TRUE_NODE
    if counter is not None:
        counter.visits += len(nodes)
    return NnfDag(tuple(nodes), dag.root, dag.num_vars)


def condition_nnf(dag: NnfDag, literals: Iterable[int], counter: PassCounter | None = None) -> NnfDag:
    lits = frozenset(literals)
    for lit in lits:
        if -lit in lits:
            raise ValueError(f"contradictory literals {lit} and {-lit}")
    nodes = list(dag.nodes)
    for i, node in enumerate(nodes):
        if node.kind is Kind.LIT:
            if node.literal in lits:
                nodes[i] = TRUE_NODE
            elif -node.literal in lits:
                nodes[i] = FALSE_NODE
    if counter is not None:
        counter.visits += len(nodes)
    return NnfDag(tuple(nodes), dag.root, dag.num_vars)


def smooth(dag: NnfDag, over: Iterable[int] | None = None) -> NnfDag:
    """Make every OR node's disjuncts mention the same variables.

    A disjunct missing variables ``v`` gets conjoined with ``(v | -v)``
    gadgets; an AND disjunct is widened in place (as a new node) so any
    literal it asserts stays a direct child. With ``over`` the root is
    padded the same way up to that variable set.
    """
    vs = dag.var_sets
    out: list[Node] = []
    remap: list[int] = []
    out_vs: list[frozenset[int]] = []
    gadget: dict[int, int] = {}

    def emit(node: Node, vars_: frozenset[int]) -> int:
        out.append(node)
        out_vs.append(vars_)
        return len(out) - 1

    def gadget_for(v: int) -> int:
        if v not in gadget:
            pos = emit(Node(Kind.LIT, literal=v), frozenset((v,)))
            neg = emit(Node(Kind.LIT, literal=-v), frozenset((v,)))
            gadget[v] = emit(Node(Kind.OR, (pos, neg), decision=v), frozenset((v,)))
        return gadget[v]

    def widen(idx: int, missing: Iterable[int]) -> int:
        missing = sorted(missing)
        if not missing:
            return idx
        extra = [gadget_for(v) for v in missing]
        node = out[idx]
        kids = list(node.children) if node.kind is Kind.AND else [idx]
        return emit(Node(Kind.AND, tuple(kids + extra)), out_vs[idx].union(missing))

    for i, node in enumerate(dag.nodes):
        if node.kind is Kind.OR:
            kids = [remap[c] for c in node.children]
            target = vs[i]
            kids = [widen(k, target - out_vs[k]) for k in kids]
            remap.append(emit(Node(Kind.OR, tuple(kids), decision=node.decision), target))
        elif node.children:
            kids = tuple(remap[c] for c in node.children)
            remap.append(emit(Node(node.kind, kids, node.literal, node.decision), vs[i]))
        else:
            remap.append(emit(node, vs[i]))
    root = remap[dag.root]
    if over is not None:
        over = frozenset(over)
        if not vs[dag.root] <= over:
            raise ValueError("root mentions variables outside 'over'")
        root = widen(root, over - vs[dag.root])
    result = NnfDag(tuple(out), root, dag.num_vars)
    return compact(result) if root != len(out) - 1 else result


# -- queries -----------------------------------------------------------------

def is_consistent(dag: NnfDag) -> bool:
    """Satisfiability by one bottom-up pass (valid for decomposable DAGs)."""
    val: list[bool] = []
    for node in dag.nodes:
        k = node.kind
        if k is Kind.LIT or k is Kind.TRUE:
            val.append(True)
        elif k is Kind.FALSE:
            val.append(False)
        elif k is Kind.AND:
            val.append(all(val[c] for c in node.children))
        else:
            val.append(any(val[c] for c in node.children))
    return val[dag.root]


def entails_clause(dag: NnfDag, clause: Sequence[int]) -> bool:
    lits = set(clause)
    if any(-l in lits for l in lits):
        raise ValueError("tautologous query clause")
    return not is_consistent(condition_nnf(dag, [-l for l in lits]))


def require_deterministic(dag: NnfDag):
    ok, violation = check_deterministic(dag, "structural")
    if ok:
        return
    from dnnf_forge.oracle import MAX_VARS

    if len(dag.mentioned()) <= MAX_VARS:
        ok, violation = check_deterministic(dag, "oracle")
        if ok:
            return
        raise PreconditionError(f"not deterministic: {violation.reason}")
    raise PreconditionError(f"not deterministic (structurally): {violation.reason}")


def model_count(dag: NnfDag, over: Iterable[int] | None = None) -> int:
    """Count models over ``over`` (default: the variables the root mentions).

    Requires a decomposable, deterministic and smooth DAG; each is checked
    and a violation raises :class:`PreconditionError`.
    """
    ok, violation = check_decomposable(dag)
    if not ok:
        raise PreconditionError(f"not decomposable: {violation.reason}")
    if not is_smooth(dag):
        raise PreconditionError("not smooth; call smooth() first")
    require_deterministic(dag)
    mentioned = dag.mentioned()
    over = mentioned if over is None else frozenset(over)
    if not mentioned <= over:
        raise PreconditionError(f"DAG mentions variables {sorted(mentioned - over)} outside 'over'")
    val: list[int] = []
    for node in dag.nodes:
        k = node.kind
        if k is Kind.LIT or k is Kind.TRUE:
            val.append(1)
        elif k is Kind.FALSE:
            val.append(0)
        elif k is Kind.AND:
            val.append(math.prod(val[c] for c in node.children))
        else:
            val.append(sum(val[c] for c in node.children))
    return val[dag.root] << len(over - mentioned)


def min_cardinality(dag: NnfDag) -> int | None:
    """Fewest positive literals in any model; None when inconsistent.

    Variables the DAG does not mention are taken to be false.
    """
    inf = math.inf
    val: list[float] = []
    for node in dag.nodes:
        k = node.kind
        if k is Kind.LIT:
            val.append(1 if node.literal > 0 else 0)
        elif k is Kind.TRUE:
            val.append(0)
        elif k is Kind.FALSE:
            val.append(inf)
        elif k is Kind.AND:
            val.append(sum(val[c] for c in node.children))
        else:
            val.append(min(val[c] for c in node.children))
    result = val[dag.root]
    return None if result == inf else int(result)
