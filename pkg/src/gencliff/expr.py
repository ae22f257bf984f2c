"""A small expression language over Cl^(1/m)_d.

Grammar (``*`` is always explicit)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := atom ('^' uint)?
    atom   := 'e' digits | 'e' | 'omega' | 'w' | 'i' | number | number 'i'
            | '(' expr ')' | ident '(' args ')'

``e`` alone is the identity; ``2.5i`` lexes as one imaginary literal so the
canonical text form of an element can be read back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from . import algebra as alg
from .algebra import AlgebraContext, AlgebraElement
from .errors import EvaluationError, GencliffError, ParseError
from .matrix_rep import represent
from .spectral import CharPolyResult, adjugate, determinant, faddeev_leverrier, inverse, trace_op

MAX_DEPTH = 100


class TokenKind(Enum):
    GENERATOR = "generator"
    NUMBER = "number"
    IMAGINARY_UNIT = "imaginary-unit"
    OMEGA = "omega"
    IDENTIFIER = "identifier"
    OPERATOR = "operator"
    PAREN = "paren"
    COMMA = "comma"
    END = "end"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    position: int
    value: complex | int | None = None


_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_GENERATOR = re.compile(r"e(\d*)")
_OMEGA_POWER = re.compile(r"w(\d+)")  # w2 is omega^2, as printed in multiplication tables


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isascii() and (ch.isdigit() or (ch == "." and pos + 1 < n and text[pos + 1].isdigit())):
            match = _NUMBER.match(text, pos)
            lexeme = match.group(0)
            end = match.end()
            value: complex | int
            if match.group(0).isdigit():
                value = int(lexeme)
            else:
                value = complex(float(lexeme))
            # 2i / 2.5i: an imaginary literal, unless 'i' starts a longer identifier
            if end < n and text[end] == "i" and not (end + 1 < n and (text[end + 1].isalnum() or text[end + 1] == "_")):
                tokens.append(Token(TokenKind.NUMBER, text[pos : end + 1], pos, complex(0, float(lexeme))))
                pos = end + 1
                continue
            tokens.append(Token(TokenKind.NUMBER, lexeme, pos, value))
            pos = end
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            match = _IDENT.match(text, pos)
            word = match.group(0)
            gen = _GENERATOR.fullmatch(word)
            if gen:
                index = int(gen.group(1)) if gen.group(1) else 0
                tokens.append(Token(TokenKind.GENERATOR, word, pos, index))
            elif word == "i":
                tokens.append(Token(TokenKind.IMAGINARY_UNIT, word, pos))
            elif word in ("omega", "w"):
                tokens.append(Token(TokenKind.OMEGA, word, pos, 1))
            elif _OMEGA_POWER.fullmatch(word):
                tokens.append(Token(TokenKind.OMEGA, word, pos, int(word[1:])))
            else:
                tokens.append(Token(TokenKind.IDENTIFIER, word, pos))
            pos = match.end()
            continue
        if ch in "+-*^":
            tokens.append(Token(TokenKind.OPERATOR, ch, pos))
        elif ch in "()":
            tokens.append(Token(TokenKind.PAREN, ch, pos))
        elif ch == ",":
            tokens.append(Token(TokenKind.COMMA, ch, pos))
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
        pos += 1
    tokens.append(Token(TokenKind.END, "", n))
    return tokens


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Scalar:
    value: complex
    position: int


@dataclass(frozen=True)
class Generator:
    index: int  # 0 is the identity e
    position: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    position: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    position: int


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int
    position: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Node", ...]
    position: int


Node = Union[Scalar, Generator, BinOp, Neg, Power, Call]

FUNCTIONS: dict[str, int] = {
    "herm": 1,
    "inv": 1,
    "adj": 1,
    "det": 1,
    "trace": 1,
    "norm": 1,
    "underline": 1,
    "charpoly": 1,
    "rep": 1,
    "grade": 2,
    "modgrade": 2,
    "auto": 2,
}


class _Parser:
    def __init__(self, text: str, ctx: AlgebraContext):
        self.tokens = tokenize(text)
        self.pos = 0
        self.ctx = ctx
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: TokenKind, lexeme: str) -> Token:
        tok = self.tok
        if tok.kind is not kind or tok.lexeme != lexeme:
            found = tok.lexeme or "end of input"
            raise ParseError(f"expected {lexeme!r}, found {found!r}", tok.position)
        return self.advance()

    def is_op(self, *ops: str) -> bool:
        return self.tok.kind is TokenKind.OPERATOR and self.tok.lexeme in ops

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind is not TokenKind.END:
            raise ParseError(f"unexpected {self.tok.lexeme!r}", self.tok.position)
        return node

    def nest(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.position)

    def expr(self) -> Node:
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance()
            node = BinOp(op.lexeme, node, self.term(), op.position)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.is_op("*"):
            op = self.advance()
            node = BinOp("*", node, self.unary(), op.position)
        return node

    def unary(self) -> Node:
        if self.is_op("-"):
            op = self.advance()
            self.nest()
            operand = self.unary()
            self.depth -= 1
            return Neg(operand, op.position)
        return self.factor()

    def factor(self) -> Node:
        node = self.atom()
        if self.is_op("^"):
            op = self.advance()
            tok = self.tok
            if tok.kind is not TokenKind.NUMBER or not isinstance(tok.value, int):
                raise ParseError("exponent must be a nonnegative integer literal", tok.position)
            self.advance()
            node = Power(node, tok.value, op.position)
        return node

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Scalar(complex(tok.value), tok.position)
        if tok.kind is TokenKind.IMAGINARY_UNIT:
            self.advance()
            return Scalar(1j, tok.position)
        if tok.kind is TokenKind.OMEGA:
            self.advance()
            return Scalar(self.ctx.omega ** (tok.value % self.ctx.m), tok.position)
        if tok.kind is TokenKind.GENERATOR:
            if tok.value > self.ctx.d:
                raise ParseError(f"generator e{tok.value} out of range for d={self.ctx.d}", tok.position)
            self.advance()
            return Generator(tok.value, tok.position)
        if tok.kind is TokenKind.PAREN and tok.lexeme == "(":
            self.advance()
            self.nest()
            node = self.expr()
            self.depth -= 1
            self.expect(TokenKind.PAREN, ")")
            return node
        if tok.kind is TokenKind.IDENTIFIER:
            return self.call()
        raise ParseError(f"unexpected {tok.lexeme or 'end of input'!r}", tok.position)

    def call(self) -> Node:
        name_tok = self.advance()
        name = name_tok.lexeme
        if name not in FUNCTIONS:
            raise ParseError(f"unknown function {name!r}", name_tok.position)
        self.expect(TokenKind.PAREN, "(")
        self.nest()
        args = [self.expr()]
        while self.tok.kind is TokenKind.COMMA:
            self.advance()
            args.append(self.expr())
        self.depth -= 1
        self.expect(TokenKind.PAREN, ")")
        if len(args) != FUNCTIONS[name]:
            raise ParseError(f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}", name_tok.position)
        return Call(name, tuple(args), name_tok.position)


def parse(text: str, ctx: AlgebraContext) -> Node:
    return _Parser(text, ctx).parse()


# --------------------------------------------------------------------------
# evaluation

Value = Union[complex, float, AlgebraElement, np.ndarray, CharPolyResult]


def _as_element(value, ctx: AlgebraContext, where: int) -> AlgebraElement:
    if isinstance(value, AlgebraElement):
        return value
    if isinstance(value, (complex, float, int)):
        return alg.scalar(ctx, complex(value))
    raise EvaluationError(f"expected an element or scalar at position {where}, got {_kind(value)}")


def _as_int(value, where: int) -> int:
    if isinstance(value, AlgebraElement):
        raise EvaluationError(f"expected an integer at position {where}, got an element")
    z = complex(value)
    if z.imag != 0 or z.real != int(z.real):
        raise EvaluationError(f"expected an integer at position {where}, got {z}")
    return int(z.real)


def _kind(value) -> str:
    if isinstance(value, AlgebraElement):
        return "element"
    if isinstance(value, np.ndarray):
        return "matrix"
    if isinstance(value, CharPolyResult):
        return "charpoly"
    return "scalar"


def _binary(op: str, a, b, ctx: AlgebraContext, where: int):
    scalars = (complex, float, int)
    if isinstance(a, scalars) and isinstance(b, scalars):
        if op == "+":
            return complex(a) + complex(b)
        if op == "-":
            return complex(a) - complex(b)
        return complex(a) * complex(b)
    if op == "*" and isinstance(a, scalars):
        return complex(a) * _as_element(b, ctx, where)
    A = _as_element(a, ctx, where)
    B = _as_element(b, ctx, where)
    if op == "+":
        return A + B
    if op == "-":
        return A - B
    return alg.multiply(A, B)


def _call(name: str, args: list, ctx: AlgebraContext, where: int):
    if name in ("grade", "modgrade", "auto"):
        U = _as_element(args[0], ctx, where)
        k = _as_int(args[1], where)
        if name == "grade":
            return alg.grade_project(U, k)
        if name == "modgrade":
            return alg.mod_grade_project(U, k)
        return alg.grade_automorphism(U, k)
    U = _as_element(args[0], ctx, where)
    if name == "herm":
        return alg.hermitian_conjugate(U)
    if name == "inv":
        return inverse(U)
    if name == "adj":
        return adjugate(U)
    if name == "det":
        return determinant(U)
    if name == "trace":
        return trace_op(U)
    if name == "norm":
        return alg.norm(U)
    if name == "underline":
        return alg.underline(U)
    if name == "charpoly":
        return faddeev_leverrier(U)
    if name == "rep":
        return represent(U)
    raise EvaluationError(f"unknown function {name!r}")  # unreachable after parse


def evaluate(node: Node, ctx: AlgebraContext) -> Value:
    """Evaluate an AST.  Scalars come back as complex (``norm`` as float)."""
    try:
        return _eval(node, ctx)
    except GencliffError:
        raise
    except (OverflowError, ZeroDivisionError, ValueError, FloatingPointError) as exc:
        raise EvaluationError(str(exc)) from exc


def _eval(node: Node, ctx: AlgebraContext) -> Value:
    if isinstance(node, Scalar):
        return node.value
    if isinstance(node, Generator):
        return alg.identity(ctx) if node.index == 0 else alg.generator(ctx, node.index)
    if isinstance(node, BinOp):
        # walk the left spine iteratively; long sums must not exhaust the stack
        spine = []
        while isinstance(node, BinOp):
            spine.append(node)
            node = node.left
        value = _eval(node, ctx)
        for op_node in reversed(spine):
            value = _binary(op_node.op, value, _eval(op_node.right, ctx), ctx, op_node.position)
        return value
    if isinstance(node, Neg):
        value = _eval(node.operand, ctx)
        if isinstance(value, (complex, float, int)):
            return -complex(value)
        return -_as_element(value, ctx, node.position)
    if isinstance(node, Power):
        value = _eval(node.base, ctx)
        if isinstance(value, (complex, float, int)):
            return complex(value) ** node.exponent
        return alg.power(_as_element(value, ctx, node.position), node.exponent)
    if isinstance(node, Call):
        args = [_eval(a, ctx) for a in node.args]
        return _call(node.name, args, ctx, node.position)
    raise EvaluationError(f"unknown node {node!r}")


def evaluate_text(text: str, ctx: AlgebraContext) -> Value:
    return evaluate(parse(text, ctx), ctx)
