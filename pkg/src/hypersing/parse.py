"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Juxtaposition such as ``2x`` is rejected.  Division is only allowed by a
nonzero constant.  Over ``Fq`` the identifier ``w`` and over ``Fpt`` the
identifier ``t`` denote the field generator unless declared as a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError
from .mpoly import Poly
from .scalars import Field

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\S))")


@dataclass
class _Tok:
    kind: str  # "int", "id", "op", "end"
    text: str
    line: int
    col: int


def _where(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.lastindex is None:
            break
        start = m.start(m.lastindex)
        line, col = _where(text, start)
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), line, col))
        elif m.group(2) is not None:
            toks.append(_Tok("id", m.group(2), line, col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(_Tok("op", ch, line, col))
        pos = m.end()
    line, col = _where(text, len(text))
    toks.append(_Tok("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str], field: Field):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = list(names)
        self.field = field
        self.n = len(self.names)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def parse(self) -> Poly:
        if self.peek().kind == "end":
            self.fail("empty expression")
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            if t.kind in ("int", "id") or t.text == "(":
                self.fail("expected an operator (implicit multiplication is not allowed)", t)
            self.fail(f"unexpected {t.text!r}", t)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            q = self.unary()
            if tok.text == "*":
                p = p * q
            else:
                if q.total_degree() > 0:
                    self.fail("division only by constants", tok)
                c = q.constant_term()
                if c == self.field.zero:
                    self.fail("division by zero", tok)
                p = p.scale(self.field.inv(c))
        return p

    def unary(self) -> Poly:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            p = self.unary()
            return -p if t.text == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind != "int":
                self.fail("expected a non-negative integer exponent", t)
            self.take()
            base = base ** int(t.text)
        return base

    def atom(self) -> Poly:
        t = self.take()
        if t.kind == "int":
            return Poly.const(self.field, self.n, int(t.text))
        if t.kind == "id":
            if t.text in self.names:
                return Poly.var(self.field, self.n, self.names.index(t.text))
            if self.field.generator_name == t.text:
                return Poly.const(self.field, self.n, self.field.generator())
            raise ParseError(f"unknown variable {t.text!r}", t.line, t.col)
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            close = self.peek()
            if close.kind != "op" or close.text != ")":
                self.fail("expected ')'", close)
            self.take()
            return p
        if t.kind == "end":
            self.fail("unexpected end of input", t)
        self.fail(f"unexpected {t.text!r}", t)
        raise AssertionError  # unreachable


def parse_poly(text: str, names: Sequence[str], field: Field) -> Poly:
    return _Parser(text, names, field).parse()


def identifiers(text: str) -> list[str]:
    """Identifiers in order of first appearance (for ``--vars auto``)."""
    seen: list[str] = []
    for tok in _tokenize(text):
        if tok.kind == "id" and tok.text not in seen:
            seen.append(tok.text)
    return seen
