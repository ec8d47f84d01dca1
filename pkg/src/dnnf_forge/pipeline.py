"""Transform, compile, forget: DNNF construction through auxiliary variables."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from dnnf_forge import nnf as nnf_mod
from dnnf_forge.cnf import Cnf
from dnnf_forge.compiler import Compiler
from dnnf_forge.formula import Formula, from_clauses
from dnnf_forge.nnf import NnfDag, NnfStats, PassCounter
from dnnf_forge.oracle import MAX_VARS, oracle_equiv, oracle_forget, oracle_of
from dnnf_forge.transform import bva, extend, tseitin

TRANSFORMS = ("none", "bva", "tseitin", "extension")


@dataclass
class PipelineReport:
    transform_kind: str
    aux_vars: frozenset[int]
    pre_stats: NnfStats
    post_stats: NnfStats
    timings: dict[str, float] = field(default_factory=dict)
    verified: str = "unverified"  # "yes", "no" or "unverified"
    forget_visits: int = 0

    def to_text(self) -> str:
        lines = [
            f"transform={self.transform_kind}",
            "aux_vars=" + ",".join(map(str, sorted(self.aux_vars))),
            f"aux_count={len(self.aux_vars)}",
            f"pre_nodes={self.pre_stats.node_count}",
            f"pre_edges={self.pre_stats.edge_count}",
            f"post_nodes={self.post_stats.node_count}",
            f"post_edges={self.post_stats.edge_count}",
            f"forget_visits={self.forget_visits}",
            f"verified={self.verified}",
        ]
        lines += [f"time_{k}={v:.2f}" for k, v in self.timings.items()]
        return "\n".join(lines) + "\n"

    def table_row(self) -> tuple[int, int, float]:
        """(#node, #edge, time) of the final DNNF."""
        return self.post_stats.node_count, self.post_stats.edge_count, round(sum(self.timings.values()), 2)


def _transform(source: Cnf | Formula, kind: str, max_steps: int) -> tuple[Cnf, tuple[int, ...]]:
    if kind not in TRANSFORMS:
        raise ValueError(f"unknown transform {kind!r}; expected one of {', '.join(TRANSFORMS)}")
    if isinstance(source, Formula):
        if kind != "tseitin":
            raise ValueError("formula input requires the tseitin transform")
        originals = tuple(sorted(source.variables()))
        return tseitin(source), originals
    cnf = source
    originals = cnf.original_variables
    if kind == "none":
        return cnf, originals
    if kind == "bva":
        return bva(cnf, max_steps), originals
    if kind == "tseitin":
        return tseitin(from_clauses(cnf.clauses), cnf.num_vars), originals
    # extension: one definition per clause over its first two literals,
    # for the first max_steps clauses with at least two literals
    todo = [c for c in cnf.clauses if len(c) >= 2][:max_steps]
    for c in todo:
        cnf = extend(cnf, c[0], c[1])
    return cnf, originals


def _round(t: float) -> float:
    return round(t, 2)


def run(
    source: Cnf | Formula,
    transform_kind: str = "none",
    max_steps: int = 0,
    *,
    compiled: NnfDag | None = None,
    verify: bool = True,
    timeout: float | None = None,
) -> tuple[NnfDag, PipelineReport]:
    """Apply the transform, compile to d-DNNF, forget the new variables.

    ``compiled`` skips the internal compiler (an externally compiled
    d-DNNF of the transformed CNF). Equivalence with the input over its
    original variables is checked when there are at most 24 of them.
    """
    timings = {}
    t0 = time.perf_counter()
    before = source.aux if isinstance(source, Cnf) else {}
    cnf, originals = _transform(source, transform_kind, max_steps)
    aux = frozenset(v for v in cnf.aux if v not in before)
    timings["transform"] = _round(time.perf_counter() - t0)

    t0 = time.perf_counter()
    dag = compiled if compiled is not None else Compiler(timeout=timeout).compile(cnf)
    timings["compile"] = _round(time.perf_counter() - t0)
    pre = nnf_mod.stats(dag)

    t0 = time.perf_counter()
    counter = PassCounter()
    out = nnf_mod.forget(dag, aux, counter)
    timings["forget"] = _round(time.perf_counter() - t0)
    post = nnf_mod.stats(out)

    verified = "unverified"
    if verify and len(originals) + len(before) <= MAX_VARS:
        keep = tuple(sorted(set(originals) | set(before)))
        want = oracle_of(source, keep)
        got = oracle_of(out, keep)
        verified = "yes" if oracle_equiv(want, got) else "no"
    report = PipelineReport(
        transform_kind if transform_kind != "bva" else f"bva({max_steps})",
        aux, pre, post, timings, verified, counter.visits,
    )
    return out, report


def compare(cnf: Cnf, k: int, *, verify: bool = True, concurrent: bool = False):
    """Reports for the bva(k) branch and the plain compile, in that order."""
    jobs = [(cnf, "bva", k), (cnf, "none", 0)]
    if concurrent:
        with ThreadPoolExecutor(2) as pool:
            results = list(pool.map(lambda a: run(*a, verify=verify), jobs))
    else:
        results = [run(*a, verify=verify) for a in jobs]
    return results[0][1], results[1][1]
