"""Recursive-descent parser for polynomial and fraction literals.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'T' INT | 'tau' | '(' expr ')'

``tau`` is accepted as a name for T1 in one-variable rings and is the only
variable allowed by :func:`parse_unipoly`. Division is only permitted by
products of declared denominators.
"""

from __future__ import annotations

import re

from .localization import Localization, LocalizedElem
from .polys import MultiPoly, UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(T\d+|tau)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, column: int | None = None, line: int | None = None):
        self.column = column
        self.line = line
        where = ""
        if line is not None:
            where += f"line {line}"
        if column is not None:
            where += (", " if where else "") + f"column {column}"
        super().__init__(f"{where}: {message}" if where else message)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex) + 1 if m.lastindex else pos + 1
        if m.group(1) is not None:
            out.append(("int", m.group(1), col))
        elif m.group(2) is not None:
            out.append(("var", m.group(2), col))
        else:
            out.append(("op", m.group(3), col))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, ring: Localization):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, col = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", col)

    def parse(self) -> LocalizedElem:
        val = self.expr()
        kind, v, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", col)
        return val

    def expr(self) -> LocalizedElem:
        val = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> LocalizedElem:
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, col = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                val = self.divide(val, rhs, col)
        return val

    def divide(self, num: LocalizedElem, den: LocalizedElem, col: int) -> LocalizedElem:
        if not den.is_polynomial():
            raise ParseError("cannot divide by a fraction", col)
        if den.is_zero():
            raise ParseError("division by zero", col)
        try:
            inv = self.ring.divide_by(self.ring.poly(1), den.num)
        except ValueError as exc:
            raise ParseError(str(exc), col) from None
        return num * inv

    def unary(self) -> LocalizedElem:
        kind, v, _ = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return -self.unary()
        if kind == "op" and v == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LocalizedElem:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, col = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", col)
            out = self.ring.one()
            for _ in range(int(v)):
                out = out * base
            return out
        return base

    def atom(self) -> LocalizedElem:
        kind, v, col = self.take()
        ring = self.ring
        if kind == "int":
            return ring.elem(int(v))
        if kind == "var":
            if v == "tau":
                if ring.nvars != 1:
                    raise ParseError("'tau' is only allowed in one-variable rings", col)
                idx = 0
            else:
                idx = int(v[1:]) - 1
                if not 0 <= idx < ring.nvars:
                    raise ParseError(f"variable {v} outside T1..T{ring.nvars}", col)
            return ring.elem(MultiPoly.var(idx, ring.nvars, ring.char))
        if kind == "op" and v == "(":
            val = self.expr()
            self.expect(")")
            return val
        raise ParseError(f"unexpected {v or 'end of input'!r}", col)


def parse_localized(text: str, ring: Localization) -> LocalizedElem:
    return _Parser(text, ring).parse()


def parse_poly(text: str, nvars: int, char: int = 0) -> MultiPoly:
    """Parse a polynomial with no division."""
    ring = Localization(nvars, char)
    val = _Parser(text, ring).parse()
    return val.num


def parse_unipoly(text: str, char: int = 0) -> UniPoly:
    """Parse a polynomial in ``tau`` (``T1`` is accepted as a synonym)."""
    poly = parse_poly(text, 1, char)
    return poly.substitute_powers((1,))
