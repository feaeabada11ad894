"""Recursive-descent reader for the rendering grammar.

Accepts sums of products of integers and named symbols, with ``^`` integer
powers (``t^-2`` and ``t^(-2)`` both work) and ``/`` by nonzero scalars.
"""

from __future__ import annotations

import re
from typing import Callable, Mapping

from .arith import C, RatFuncC

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None:
            if op not in "+-*/^()":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, names: Mapping[str, object], lift: Callable[[int], object]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = names
        self.lift = lift

    def error(self, msg: str):
        raise ValueError(f"cannot parse {self.text!r}: {msg}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            self.error(f"expected {value or kind}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.error("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            self.error(f"trailing input at {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                value = value / _as_divisor(rhs, self)
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            base = base ** self.exponent()
        return base

    def exponent(self) -> int:
        if self.peek() == ("op", "("):
            self.take()
            n = self.exponent()
            self.take("op", ")")
            return n
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        return sign * int(self.take("num")[1])

    def atom(self):
        kind, value = self.peek()
        if kind == "num":
            self.take()
            return self.lift(int(value))
        if kind == "name":
            self.take()
            if value not in self.names:
                self.error(f"unknown symbol {value!r}")
            return self.names[value]
        if (kind, value) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        self.error(f"unexpected {value!r}")


def _as_divisor(x, parser: _Parser):
    if isinstance(x, RatFuncC):
        return x
    scalar = getattr(x, "as_scalar", None)
    if scalar is not None:
        try:
            return scalar()
        except ValueError:
            pass
    parser.error("division is only allowed by expressions in c")


def parse_expression(text: str, names: Mapping[str, object], lift: Callable[[int], object]):
    return _Parser(text, names, lift).parse()


def parse_scalar(text: str) -> RatFuncC:
    """Parse an element of Q(c), e.g. ``(32*c^2-5)/35``."""
    return parse_expression(text, {"c": C}, RatFuncC.const)
