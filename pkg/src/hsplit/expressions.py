"""Parse, evaluate, and differentiate expressions in one variable on [0, 1].

Grammar (whitespace ignored; precedence ``^`` > unary ``-`` > ``* /``
> ``+ -``):

    expression := term (("+" | "-") term)*
    term       := factor (("*" | "/") factor)*
    factor     := "-" factor | power
    power      := atom ("^" factor)?          right-associative
    atom       := NUMBER | "x" | NAME "(" expression ")" | "(" expression ")"

NAME is one of ``exp``, ``sin``, ``cos``.  Exponents must fold to a
non-negative integer constant and divisors to a nonzero constant, so
every parseable expression is smooth on [0, 1].  Division is stored as
multiplication by the reciprocal; there is no quotient node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


class ParseError(ValueError):
    """Raised for any malformed source text; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class Expr:
    """Immutable node of an expression tree in the single variable x."""

    def eval(self, x):
        """Value at ``x``; accepts floats or numpy arrays of any shape."""
        raise NotImplementedError

    def derivative(self) -> "Expr":
        """Exact derivative tree (sum/product/chain rules, no simplification)."""
        raise NotImplementedError

    def to_text(self) -> str:
        """Parenthesized source text; reparsing yields the identical tree."""
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Constant(Expr):
    value: float

    def eval(self, x):
        return self.value

    def derivative(self):
        return Constant(0.0)

    def to_text(self):
        # Negative constants are not parser-producible; they reparse as
        # Negate(Constant) which evaluates identically.
        if self.value < 0:
            return f"(-{-self.value!r})"
        return repr(self.value)


@dataclass(frozen=True)
class Variable(Expr):
    def eval(self, x):
        return x

    def derivative(self):
        return Constant(1.0)

    def to_text(self):
        return "x"


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr

    def eval(self, x):
        return self.left.eval(x) + self.right.eval(x)

    def derivative(self):
        return Sum(self.left.derivative(), self.right.derivative())

    def to_text(self):
        return f"({self.left.to_text()}+{self.right.to_text()})"


@dataclass(frozen=True)
class Product(Expr):
    left: Expr
    right: Expr

    def eval(self, x):
        return self.left.eval(x) * self.right.eval(x)

    def derivative(self):
        return Sum(
            Product(self.left.derivative(), self.right),
            Product(self.left, self.right.derivative()),
        )

    def to_text(self):
        return f"({self.left.to_text()}*{self.right.to_text()})"


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError("exponent must be a non-negative integer")

    def eval(self, x):
        return self.base.eval(x) ** self.exponent

    def derivative(self):
        if self.exponent == 0:
            return Constant(0.0)
        return Product(
            Product(Constant(float(self.exponent)), Power(self.base, self.exponent - 1)),
            self.base.derivative(),
        )

    def to_text(self):
        return f"({self.base.to_text()}^{self.exponent})"


@dataclass(frozen=True)
class Negate(Expr):
    child: Expr

    def eval(self, x):
        return -self.child.eval(x)

    def derivative(self):
        return Negate(self.child.derivative())

    def to_text(self):
        return f"(-{self.child.to_text()})"


_PRIMITIVES = {"exp": np.exp, "sin": np.sin, "cos": np.cos}


@dataclass(frozen=True)
class Apply(Expr):
    primitive: str
    argument: Expr

    def __post_init__(self):
        if self.primitive not in _PRIMITIVES:
            raise ValueError(f"unsupported primitive {self.primitive!r}")

    def eval(self, x):
        return _PRIMITIVES[self.primitive](self.argument.eval(x))

    def derivative(self):
        inner = self.argument.derivative()
        if self.primitive == "exp":
            return Product(self, inner)
        if self.primitive == "sin":
            return Product(Apply("cos", self.argument), inner)
        return Negate(Product(Apply("sin", self.argument), inner))

    def to_text(self):
        return f"{self.primitive}({self.argument.to_text()})"


def contains_variable(expr: Expr) -> bool:
    if isinstance(expr, Variable):
        return True
    if isinstance(expr, (Sum, Product)):
        return contains_variable(expr.left) or contains_variable(expr.right)
    if isinstance(expr, Power):
        return contains_variable(expr.base)
    if isinstance(expr, Negate):
        return contains_variable(expr.child)
    if isinstance(expr, Apply):
        return contains_variable(expr.argument)
    return False


# ---------------------------------------------------------------------------
# tokenizer / recursive-descent parser
# ---------------------------------------------------------------------------

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class _Token:
    kind: str  # "number" | "name" | one of "+-*/^()" | "end"
    text: str
    position: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER.match(source, i)
            if m is None:
                raise ParseError("syntax error: malformed number", i)
            tokens.append(_Token("number", m.group(), i))
            i = m.end()
        elif ch.isalpha() or ch == "_":
            m = _NAME.match(source, i)
            tokens.append(_Token("name", m.group(), i))
            i = m.end()
        elif ch in "+-*/^()":
            tokens.append(_Token(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"syntax error: unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"syntax error: expected {kind!r}, found {self._describe(tok)}",
                tok.position,
            )
        return self.advance()

    @staticmethod
    def _describe(tok: _Token) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def expression(self) -> Expr:
        node = self.term()
        while self.peek().kind in "+-":
            if self.advance().kind == "+":
                node = Sum(node, self.term())
            else:
                node = Sum(node, Negate(self.term()))
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind in "*/":
            op = self.advance()
            if op.kind == "*":
                node = Product(node, self.factor())
            else:
                pos = self.peek().position
                denominator = self.factor()
                if contains_variable(denominator):
                    raise ParseError("denominator must be a constant", pos)
                value = float(denominator.eval(0.0))
                if value == 0.0:
                    raise ParseError("division by zero constant", pos)
                node = Product(node, Constant(1.0 / abs(value)))
                if value < 0.0:
                    node = Negate(node)
        return node

    def factor(self) -> Expr:
        if self.peek().kind == "-":
            self.advance()
            return Negate(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        self.advance()
        pos = self.peek().position
        exponent = self.factor()
        if contains_variable(exponent):
            raise ParseError("non-integer exponent: exponent must be constant", pos)
        value = float(exponent.eval(0.0))
        if not value.is_integer():
            raise ParseError(f"non-integer exponent {value}", pos)
        if value < 0:
            raise ParseError(f"non-integer exponent: {int(value)} is negative", pos)
        return Power(base, int(value))

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Constant(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "x":
                return Variable()
            if tok.text in _PRIMITIVES:
                self.expect("(")
                inner = self.expression()
                self.expect(")")
                return Apply(tok.text, inner)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.position)
        if tok.kind == "(":
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        raise ParseError(
            f"syntax error: unexpected {self._describe(tok)}", tok.position
        )


def parse(source: str) -> Expr:
    """Parse ``source`` into an expression tree.

    Raises ParseError (with a 0-based character position) on malformed
    syntax, non-constant or zero divisors, non-integer or negative
    exponents, and unknown identifiers.
    """
    parser = _Parser(_tokenize(source))
    node = parser.expression()
    tail = parser.peek()
    if tail.kind != "end":
        raise ParseError(
            f"syntax error: unexpected {parser._describe(tail)}", tail.position
        )
    return node
