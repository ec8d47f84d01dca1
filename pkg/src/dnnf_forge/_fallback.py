"""Pure-Python kernels; same results as the compiled ``_speedups`` module."""

from __future__ import annotations

import numpy as np

from dnnf_forge._csr import ClauseCsr, lit_code


def grid_matches(csr: ClauseCsr, m_cls: np.ndarray, seed: int):
    """For each clause C = m_cls[p] (all containing ``seed``) find every other
    clause D with |D| = |C| and D = (C - {seed}) + {k}.

    Returns int32 arrays ``(p, k, d)`` sorted by ``(p, d)``.
    """
    clauses = csr.clauses
    occ = csr.scratch.setdefault("occ_sets", {})
    counts = csr.occurrences

    def occ_set(lit):
        s = occ.get(lit)
        if s is None:
            s = occ[lit] = set(csr.containing(lit).tolist())
        return s

    out_p, out_k, out_d = [], [], []
    units = None
    for p, c in enumerate(m_cls.tolist()):
        clause = clauses[c]
        rest = [l for l in clause if l != seed]
        if rest:
            rest.sort(key=lambda l: counts[lit_code(l)])
            cand = set.intersection(*(occ_set(l) for l in rest))
        else:
            if units is None:
                units = set(csr.units.tolist())
            cand = units
        size = len(clause)
        rest_set = set(rest)
        for d in sorted(cand):
            if d == c:
                continue
            other = clauses[d]
            if len(other) != size:
                continue
            extra = [l for l in other if l not in rest_set]
            if len(extra) == 1:
                out_p.append(p)
                out_k.append(extra[0])
                out_d.append(d)
    return (
        np.asarray(out_p, dtype=np.int32),
        np.asarray(out_k, dtype=np.int32),
        np.asarray(out_d, dtype=np.int32),
    )
