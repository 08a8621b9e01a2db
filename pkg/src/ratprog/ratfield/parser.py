"""Recursive-descent parser for one-variable rational expressions.

Grammar (``t`` is the only variable)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary | power)*     # juxtaposition multiplies
    unary   := ("+" | "-") unary | power
    power   := primary ("^" INTEGER)?
    primary := NUMBER | "t" | "(" expr ")"

Juxtaposition is only recognised before ``t`` or ``(``, so ``2t`` and
``(t+1)(t-1)`` parse but ``t 2`` does not. Implicit products bind like ``*``
and associate left to right: ``1/2t`` is ``(1/2)*t``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from ..errors import ExpressionSyntaxError
from .rational import RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|(t)|(\^|\*|/|\+|-|\(|\)))")


class Token(NamedTuple):
    kind: str  # "num", "var", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(Token("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(Token("var", "t", start))
        else:
            tokens.append(Token("op", m.group(3), start))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op):
        if not self.at_op(op):
            raise ExpressionSyntaxError(f"expected {op!r}", self.tok.pos)
        self.take()

    def parse(self) -> RationalFunction:
        if self.tok.kind == "end":
            raise ExpressionSyntaxError("empty expression", 0)
        value = self.expr()
        if self.tok.kind != "end":
            raise ExpressionSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return value

    def expr(self):
        value = self.term()
        while self.at_op("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            if self.at_op("*"):
                self.take()
                value = value * self.unary()
            elif self.at_op("/"):
                self.take()
                value = value / self.unary()
            elif self.tok.kind == "var" or self.at_op("("):
                value = value * self.power()
            else:
                return value

    def unary(self):
        if self.at_op("-"):
            self.take()
            return -self.unary()
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.at_op("^"):
            self.take()
            tok = self.tok
            if tok.kind != "num" or not tok.text.isdigit():
                raise ExpressionSyntaxError("exponent must be a nonnegative integer literal", tok.pos)
            self.take()
            if self.at_op("^"):
                raise ExpressionSyntaxError("chained exponents are ambiguous; add parentheses", self.tok.pos)
            return base ** int(tok.text)
        return base

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.take()
            return RationalFunction.constant(Fraction(tok.text))
        if tok.kind == "var":
            self.take()
            return RationalFunction.variable()
        if self.at_op("("):
            self.take()
            value = self.expr()
            self.expect_op(")")
            return value
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExpressionSyntaxError(f"unexpected {what}", tok.pos)


def parse_rational_function(text: str) -> RationalFunction:
    """Parse ``text`` into a normalized :class:`RationalFunction`.

    Raises ExpressionSyntaxError (with a 0-based character position) on bad
    input and DivisionByZeroFunction when a divisor simplifies to 0.
    """
    return _Parser(text).parse()
