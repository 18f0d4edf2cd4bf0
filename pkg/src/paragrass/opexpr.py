"""Parser and evaluator for operator polynomials in ``a(i)``, ``ad(i)``, ``N(i)``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' uint)?
    atom   := complex | 'a(' uint ')' | 'ad(' uint ')' | 'N(' uint ')' | '(' expr ')'

A complex literal is ``<float>``, ``<float>i`` or ``<float>(+|-)<float>i``
written without spaces, e.g. ``0.5``, ``2i``, ``1.5-0.25i``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import fock
from .qnum import QContext

__all__ = [
    "OpSyntaxError",
    "Num",
    "Gen",
    "BinOp",
    "Neg",
    "Pow",
    "OpExpr",
    "parse_op",
    "evaluate",
    "render",
    "random_op_expr",
]


class OpSyntaxError(ValueError):
    def __init__(self, message, source, pos):
        line = source.count("\n", 0, pos) + 1
        col = pos - (source.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Gen:
    name: str  # 'a', 'ad' or 'N'
    mode: int


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-' or '*'
    left: "OpExpr"
    right: "OpExpr"


@dataclass(frozen=True)
class Neg:
    operand: "OpExpr"


@dataclass(frozen=True)
class Pow:
    base: "OpExpr"
    exponent: int


OpExpr = Union[Num, Gen, BinOp, Neg, Pow]

_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"""
    (?P<ws>\s+)
  | (?P<complex>{_FLOAT}[+-]{_FLOAT}i)
  | (?P<imag>{_FLOAT}i)
  | (?P<real>{_FLOAT})
  | (?P<gen>ad|a|N)(?=\s*\()
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(source: str):
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN.match(source, pos)
        if match is None:
            raise OpSyntaxError(f"unexpected character {source[pos]!r}", source, pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    tokens.append(("end", "", len(source)))
    return tokens


def _complex_literal(kind: str, text: str) -> complex:
    if kind == "real":
        return complex(float(text), 0.0)
    if kind == "imag":
        return complex(0.0, float(text[:-1]))
    split = max(text.rfind("+"), text.rfind("-"))
    # skip a sign that belongs to an exponent of the real part
    while split > 0 and text[split - 1] in "eE":
        split = max(text.rfind("+", 0, split - 1), text.rfind("-", 0, split - 1))
    return complex(float(text[:split]), float(text[split:-1]))


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise OpSyntaxError(f"{message}, found {found}", self.source, tok[2])

    def expect(self, text):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != text:
            self.error(f"expected {text!r}")
        return self.advance()

    def uint(self):
        tok = self.peek()
        if tok[0] != "real" or not tok[1].isdigit():
            self.error("expected a nonnegative integer")
        self.advance()
        return int(tok[1])

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            node = Pow(node, self.uint())
        return node

    def atom(self):
        tok = self.peek()
        kind, text, _ = tok
        if kind in ("real", "imag", "complex"):
            self.advance()
            return Num(_complex_literal(kind, text))
        if kind == "gen":
            self.advance()
            self.expect("(")
            mode = self.uint()
            self.expect(")")
            return Gen(text, mode)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.error("expected a number, a(i), ad(i), N(i) or '('")


def parse_op(source: str) -> OpExpr:
    """Parse ``source`` into an AST; raises :class:`OpSyntaxError` with line/column."""
    return _Parser(source).parse()


_GENERATORS = {"a": fock.annihilation, "ad": fock.creation, "N": fock.number_op}


def evaluate(node: OpExpr, ctx: QContext) -> fock.FockOp:
    """Evaluate an AST to a Fock-space matrix; mode indices are checked against ``ctx.m``."""
    if isinstance(node, Num):
        return fock.scale(fock.identity(ctx), node.value)
    if isinstance(node, Gen):
        if not 1 <= node.mode <= ctx.m:
            raise ValueError(f"mode index {node.mode} out of range 1..{ctx.m} in {node.name}({node.mode})")
        return _GENERATORS[node.name](ctx, node.mode)
    if isinstance(node, Neg):
        return fock.scale(evaluate(node.operand, ctx), -1)
    if isinstance(node, Pow):
        return evaluate(node.base, ctx) ** node.exponent
    if isinstance(node, BinOp):
        left, right = evaluate(node.left, ctx), evaluate(node.right, ctx)
        if node.op == "+":
            return fock.add(left, right)
        if node.op == "-":
            return fock.add(left, fock.scale(right, -1))
        return fock.compose(left, right)
    raise TypeError(f"not an operator expression: {node!r}")


def _render_num(z: complex) -> str:
    if math.copysign(1.0, z.real) < 0:
        # literals are unsigned in the grammar; write -z under a negation
        return f"(-{_render_num(-z)})"
    text = repr(float(z.real))
    if z.imag != 0:
        text += f"{'-' if z.imag < 0 else '+'}{repr(float(abs(z.imag)))}i"
    return text


def render(node: OpExpr) -> str:
    """Fully parenthesized text that parses back to an equal AST."""
    if isinstance(node, Num):
        return _render_num(node.value)
    if isinstance(node, Gen):
        return f"{node.name}({node.mode})"
    if isinstance(node, Neg):
        return f"(-{render(node.operand)})"
    if isinstance(node, Pow):
        return f"({render(node.base)})^{node.exponent}"
    if isinstance(node, BinOp):
        return f"({render(node.left)} {node.op} {render(node.right)})"
    raise TypeError(f"not an operator expression: {node!r}")


def random_op_expr(rng: np.random.Generator, m: int, max_degree: int = 3, max_terms: int = 6) -> OpExpr:
    """Random polynomial of degree ``<= max_degree`` in ``a(i), ad(i), N(i)``.

    Coefficients are uniform in the complex unit square ``[0,1) x [0,1)``.
    """
    gens = [Gen(name, i) for i in range(1, m + 1) for name in ("a", "ad", "N")]
    node = None
    for _ in range(int(rng.integers(1, max_terms + 1))):
        coeff = complex(rng.random(), rng.random())
        term: OpExpr = Num(coeff)
        for _ in range(int(rng.integers(0, max_degree + 1))):
            term = BinOp("*", term, gens[int(rng.integers(len(gens)))])
        node = term if node is None else BinOp("+", node, term)
    return node
