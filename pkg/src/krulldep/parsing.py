"""Tiny expression grammar shared by polynomials and ring elements.

Grammar::

    expr  := term (("+" | "-") term)*
    term  := unary (("*" unary) | ("/" INT))*
    unary := "-" unary | "+" unary | power
    power := atom ("^" INT)?
    atom  := INT | IDENT | "(" expr ")"

Parsing produces a small AST that is evaluated against any ring object
offering ``from_int``, ``from_fraction``, ``add``, ``sub``, ``neg``, ``mul``
and ``pow``.  Identifiers are resolved through a caller supplied mapping.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Callable, Mapping

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    """Malformed expression text; ``position`` is a character offset."""

    def __init__(self, message: str, position: int = -1):
        super().__init__(message if position < 0 else f"{message} at position {position}")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, Any, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern always matches non-space
            raise ParseError("unexpected character", pos)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_int(self) -> int:
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("expected an integer", pos)
        return val

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            if op == "*":
                node = ("mul", node, self.unary())
            else:
                pos = self.peek()[2]
                d = self.expect_int()
                if d == 0:
                    raise ParseError("division by zero", pos)
                node = ("div", node, d)
        return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return ("neg", self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            node = ("pow", node, self.expect_int())
        return node

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return ("int", val)
        if kind == "name":
            return ("name", val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2)
            return node
        raise ParseError("unexpected token", pos)


def parse_ast(text: str):
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    node = p.expr()
    kind, _, pos = p.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return node


def evaluate_ast(node, ring, symbols: Mapping[str, Any] | Callable[[str], Any]):
    lookup = symbols if callable(symbols) else symbols.__getitem__

    def ev(n):
        tag = n[0]
        if tag == "int":
            return ring.from_int(n[1])
        if tag == "name":
            try:
                return lookup(n[1])
            except KeyError:
                raise ParseError(f"unknown symbol {n[1]!r}", n[2]) from None
        if tag == "add":
            return ring.add(ev(n[1]), ev(n[2]))
        if tag == "sub":
            return ring.sub(ev(n[1]), ev(n[2]))
        if tag == "mul":
            return ring.mul(ev(n[1]), ev(n[2]))
        if tag == "neg":
            return ring.neg(ev(n[1]))
        if tag == "pow":
            return ring.pow(ev(n[1]), n[2])
        if tag == "div":
            return ring.mul(ev(n[1]), ring.from_fraction(Fraction(1, n[2])))
        raise AssertionError(tag)

    return ev(node)


def parse_with(text: str, ring, symbols) -> Any:
    return evaluate_ast(parse_ast(text), ring, symbols)
