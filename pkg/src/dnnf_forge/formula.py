"""Boolean expression trees and their prefix text format.

Text format, whitespace-insensitive::

    (and f g ...) (or f g ...) (not f) (xor f g) (iff f g) (var i) true false
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class FormulaSyntaxError(ValueError):
    pass


class Formula:
    """Base class; supports ``&``, ``|``, ``~`` and ``^`` for convenience."""

    def __and__(self, other: "Formula") -> "And":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Or":
        return Or((self, other))

    def __xor__(self, other: "Formula") -> "Xor":
        return Xor(self, other)

    def __invert__(self) -> "Not":
        return Not(self)

    def children(self) -> tuple["Formula", ...]:
        return ()

    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if isinstance(f, Var):
                out.add(f.index)
            stack.extend(f.children())
        return frozenset(out)

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True, eq=True, repr=True)
class Var(Formula):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class And(Formula):
    operands: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if not self.operands:
            raise ValueError("AND needs at least one operand")

    def children(self):
        return self.operands


@dataclass(frozen=True)
class Or(Formula):
    operands: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if not self.operands:
            raise ValueError("OR needs at least one operand")

    def children(self):
        return self.operands


@dataclass(frozen=True)
class Xor(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


def literal(lit: int) -> Formula:
    """Formula for a DIMACS literal."""
    return Var(lit) if lit > 0 else Not(Var(-lit))


def from_clauses(clauses) -> Formula:
    """Conjunction of disjunctions; the empty conjunction is ``true``."""
    parts = []
    for clause in clauses:
        parts.append(Or(tuple(literal(l) for l in clause)) if clause else Const(False))
    if not parts:
        return Const(True)
    return And(tuple(parts))


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_NARY = {"and": And, "or": Or}
_BINARY = {"xor": Xor, "iff": Iff}


def parse_formula(text: str) -> Formula:
    tokens = _TOKEN.findall(text)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            got = tokens[pos] if pos < len(tokens) else "end of input"
            raise FormulaSyntaxError(f"expected {tok!r}, got {got!r}")
        pos += 1

    def parse() -> Formula:
        nonlocal pos
        if pos >= len(tokens):
            raise FormulaSyntaxError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "true":
            return Const(True)
        if tok == "false":
            return Const(False)
        if tok != "(":
            raise FormulaSyntaxError(f"unexpected token {tok!r}")
        if pos >= len(tokens):
            raise FormulaSyntaxError("unexpected end of input")
        op = tokens[pos]
        pos += 1
        if op == "var":
            try:
                index = int(tokens[pos])
            except (IndexError, ValueError):
                raise FormulaSyntaxError("(var i) needs an integer index") from None
            pos += 1
            expect(")")
            return Var(index)
        args = []
        while pos < len(tokens) and tokens[pos] != ")":
            args.append(parse())
        expect(")")
        if op == "not":
            if len(args) != 1:
                raise FormulaSyntaxError("(not f) takes one operand")
            return Not(args[0])
        if op in _NARY:
            if not args:
                raise FormulaSyntaxError(f"({op} ...) needs operands")
            return _NARY[op](tuple(args))
        if op in _BINARY:
            if len(args) != 2:
                raise FormulaSyntaxError(f"({op} a b) takes two operands")
            return _BINARY[op](*args)
        raise FormulaSyntaxError(f"unknown operator {op!r}")

    result = parse()
    if pos != len(tokens):
        raise FormulaSyntaxError(f"trailing input at token {pos}")
    return result


def format_formula(f: Formula) -> str:
    if isinstance(f, Var):
        return f"(var {f.index})"
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return f"(not {format_formula(f.operand)})"
    if isinstance(f, (And, Or)):
        op = "and" if isinstance(f, And) else "or"
        return f"({op} {' '.join(format_formula(g) for g in f.operands)})"
    op = "xor" if isinstance(f, Xor) else "iff"
    return f"({op} {format_formula(f.left)} {format_formula(f.right)})"
