"""dnnf-forge command line.

Exit codes: 0 success, 1 input error or failed check, 2 resource limit
(timeout, oracle cap), 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from dnnf_forge import families, nnf
from dnnf_forge.cnf import Cnf, DimacsError, parse_dimacs, write_dimacs
from dnnf_forge.compiler import CompileTimeout
from dnnf_forge.formula import FormulaSyntaxError, parse_formula
from dnnf_forge.nnf import NnfError, PreconditionError
from dnnf_forge.oracle import TooManyVariables, oracle_equiv, oracle_of
from dnnf_forge.pipeline import TRANSFORMS, run
from dnnf_forge.transform import bva

log = logging.getLogger("dnnf_forge")

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(Exception):
    pass


class InvariantError(Exception):
    pass


def _read(path: str) -> bytes:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"{path}: no such file")
    return p.read_bytes()


def _write(path: str | None, data: bytes):
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _load_input(path: str, fmt: str):
    data = _read(path)
    if fmt == "auto":
        fmt = "formula" if data.lstrip()[:1] == b"(" or data.strip() in (b"true", b"false") else "dimacs"
    if fmt == "formula":
        return parse_formula(data.decode("utf-8"))
    return parse_dimacs(data)


def _load_nnf(path: str) -> nnf.NnfDag:
    return nnf.parse_nnf(_read(path))


def _seed(args) -> int:
    env = os.environ.get("DNNF_FORGE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"DNNF_FORGE_SEED={env!r} is not an integer") from None
    return args.seed


# -- compile -----------------------------------------------------------------

def cmd_compile(args) -> int:
    source = _load_input(args.input, args.format)
    compiled = _load_nnf(args.nnf) if args.nnf else None
    if compiled is not None and args.transform != "none":
        raise InputError("--nnf can only be combined with --transform none")
    dag, report = run(source, args.transform, args.max_steps, compiled=compiled,
                      verify=not args.no_verify, timeout=args.timeout)
    ok, violation = nnf.check_decomposable(dag)
    if not ok:
        raise InvariantError(f"output is not decomposable at node {violation.node}")
    if report.verified == "no":
        raise InvariantError("output is not equivalent to the input")
    _write(args.out, nnf.write_nnf(dag))
    if args.report:
        _write(args.report, report.to_text().encode())
    return EXIT_OK


def cmd_transform(args) -> int:
    cnf = _load_input(args.input, "dimacs")
    if args.transform == "bva":
        cnf = bva(cnf, args.max_steps)
    elif args.transform != "none":
        raise InputError("only 'bva' and 'none' are supported here")
    _write(args.out, write_dimacs(cnf))
    return EXIT_OK


# -- gen ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n < 1:
        raise InputError("n must be at least 1")
    if args.family == "delta-a":
        cnf = families.delta_a(args.n)
    elif args.family == "delta-b":
        cnf = families.delta_b(args.n)
    else:
        clauses = args.clauses if args.clauses is not None else 2 * args.n
        cnf = families.random_cnf(args.n, clauses, args.max_len, _seed(args))
    _write(args.out, write_dimacs(cnf))
    return EXIT_OK


# -- check -------------------------------------------------------------------

def _verdict(name: str, ok: bool, detail: str = "") -> str:
    return f"{name}: {'yes' if ok else 'no'}" + (f" ({detail})" if detail and not ok else "")


def cmd_check(args) -> int:
    dag = _load_nnf(args.input)
    lines, all_ok = [], True
    wanted = args.decomposable or args.deterministic or args.smooth or args.equiv
    if args.decomposable or not wanted:
        ok, v = nnf.check_decomposable(dag)
        lines.append(_verdict("decomposable", ok, v and f"node {v.node}, variable {v.variable}"))
        all_ok &= ok
    if args.deterministic:
        ok, v = nnf.check_deterministic(dag, args.deterministic)
        lines.append(_verdict(f"deterministic({args.deterministic})", ok, v and f"node {v.node}"))
        all_ok &= ok
    if args.smooth:
        ok = nnf.is_smooth(dag)
        lines.append(_verdict("smooth", ok))
        all_ok &= ok
    if args.equiv:
        ref = parse_dimacs(_read(args.equiv))
        variables = sorted(set(ref.variables) | set(dag.mentioned()))
        ok = oracle_equiv(oracle_of(ref, variables), oracle_of(dag, variables))
        lines.append(_verdict("equivalent", ok))
        all_ok &= ok
    print("\n".join(lines))
    return EXIT_OK if all_ok else EXIT_INPUT


# -- query -------------------------------------------------------------------

def _parse_lits(text: str) -> list[int]:
    try:
        lits = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad literal list {text!r}") from None
    lits = [l for l in lits if l != 0]
    if not lits:
        raise InputError("empty literal list")
    return lits


def cmd_query(args) -> int:
    dag = _load_nnf(args.input)
    ok, v = nnf.check_decomposable(dag)
    if not ok:
        raise InputError(f"input is not decomposable (node {v.node}); queries need a DNNF")
    if args.consistent:
        print("consistent: " + ("true" if nnf.is_consistent(dag) else "false"))
    elif args.entails is not None:
        try:
            res = nnf.entails_clause(dag, _parse_lits(args.entails))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        print("entails: " + ("true" if res else "false"))
    elif args.count:
        over = range(1, dag.num_vars + 1)
        try:
            nnf.require_deterministic(dag)
        except PreconditionError as exc:
            print(f"count refused: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"count: {nnf.model_count(nnf.smooth(dag), over)}")
    else:
        mc = nnf.min_cardinality(dag)
        print("min-card: " + ("inconsistent" if mc is None else str(mc)))
    return EXIT_OK


# -- bench -------------------------------------------------------------------

def _bench_branch(cnf: Cnf, kind: str, steps: int, timeout: float | None):
    try:
        _, rep = run(cnf, kind, steps, verify=False, timeout=timeout)
    except CompileTimeout:
        return None
    return rep.table_row()


def _bench_row(task):
    label, cnf, steps, timeout = task
    return label, _bench_branch(cnf, "bva", steps, timeout), _bench_branch(cnf, "none", 0, timeout)


def _fmt(cell) -> str:
    if cell is None:
        return f"{'--':>7} {'--':>7} {'--':>8}"
    nodes, edges, t = cell
    return f"{nodes:>7} {edges:>7} {t:>8.2f}"


def cmd_bench(args) -> int:
    tasks = []
    if args.cnf:
        for path in args.cnf:
            tasks.append((Path(path).name, parse_dimacs(_read(path)), args.max_steps, args.timeout))
    else:
        ns = [int(x) for x in args.n_list.split(",") if x.strip()] if args.n_list else []
        gen = families.delta_a if args.family == "delta-a" else families.delta_b
        for n in ns:
            if n < 1:
                raise InputError("n must be at least 1")
            tasks.append((str(n), gen(n), args.max_steps, args.timeout))
    width = max([len(t[0]) for t in tasks] + [4])
    head = f"{'name':<{width}} | {'with-transform':^24} | {'plain':^24}"
    sub = f"{'':<{width}} | {'#node':>7} {'#edge':>7} {'time':>8} | {'#node':>7} {'#edge':>7} {'time':>8}"
    print(head)
    print(sub)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_row, tasks))  # map keeps input order
    else:
        rows = [_bench_row(t) for t in tasks]
    for label, with_t, plain in rows:
        print(f"{label:<{width}} | {_fmt(with_t)} | {_fmt(plain)}", flush=True)
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dnnf-forge", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized generators (DNNF_FORGE_SEED overrides)")
    p.add_argument("-v", "--verbose", action="store_true")
    sp = p.add_subparsers(dest="cmd", required=True)

    c = sp.add_parser("compile", help="transform, compile to d-DNNF, forget auxiliary variables")
    c.add_argument("input")
    c.add_argument("--transform", choices=TRANSFORMS, default="none")
    c.add_argument("--max-steps", type=int, default=8)
    c.add_argument("--format", choices=("auto", "dimacs", "formula"), default="auto")
    c.add_argument("--out", help="NNF output path (default stdout)")
    c.add_argument("--report", nargs="?", const="-", help="write the key=value report (default stdout)")
    c.add_argument("--timeout", type=float)
    c.add_argument("--nnf", help="use this precompiled d-DNNF instead of the internal compiler")
    c.add_argument("--no-verify", action="store_true", help="skip the oracle equivalence check")
    c.set_defaults(func=cmd_compile)

    t = sp.add_parser("transform", help="write the transformed CNF")
    t.add_argument("input")
    t.add_argument("--transform", choices=("none", "bva"), default="bva")
    t.add_argument("--max-steps", type=int, default=8)
    t.add_argument("--out")
    t.set_defaults(func=cmd_transform)

    g = sp.add_parser("gen", help="generate a benchmark CNF")
    g.add_argument("family", choices=("delta-a", "delta-b", "random"))
    g.add_argument("n", type=int, help="family size, or variable count for random")
    g.add_argument("--clauses", type=int, help="clause count for random (default 2n)")
    g.add_argument("--max-len", type=int, default=3)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    k = sp.add_parser("check", help="check NNF properties")
    k.add_argument("input")
    k.add_argument("--decomposable", action="store_true")
    k.add_argument("--deterministic", choices=("structural", "oracle"))
    k.add_argument("--smooth", action="store_true")
    k.add_argument("--equiv", metavar="REF_CNF")
    k.set_defaults(func=cmd_check)

    q = sp.add_parser("query", help="answer a query on a DNNF")
    q.add_argument("input")
    qg = q.add_mutually_exclusive_group(required=True)
    qg.add_argument("--consistent", action="store_true")
    qg.add_argument("--entails", metavar="LITS", help='clause as DIMACS literals, e.g. "1 -3"')
    qg.add_argument("--count", action="store_true")
    qg.add_argument("--min-card", action="store_true")
    q.set_defaults(func=cmd_query)

    b = sp.add_parser("bench", help="with- versus without-transform size table")
    b.add_argument("--family", choices=("delta-a", "delta-b"), default="delta-a")
    b.add_argument("--n-list", default="10")
    b.add_argument("--cnf", nargs="+", help="benchmark these DIMACS files instead of a family")
    b.add_argument("--max-steps", type=int, default=8)
    b.add_argument("--timeout", type=float, default=60.0)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CompileTimeout, TooManyVariables, MemoryError, RecursionError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InputError, DimacsError, NnfError, FormulaSyntaxError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
