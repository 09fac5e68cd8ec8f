"""Recursive-descent parser for noncommutative polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | generator | '[' expr ',' expr ']' | '(' expr ')'

Declared generator names win over the generic ``X<k>`` spelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ExpressionError
from .freealg import FreePoly
from .lie import BracketTable, bracket

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)")
_GENERIC = re.compile(r"X(\d+)$")


@dataclass(frozen=True)
class ParsedExpression:
    source: str
    poly: FreePoly
    names: dict = field(default_factory=dict)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        num, ident, sym = m.groups()
        start = pos
        if num:
            toks.append(("num", int(num), start))
        elif ident:
            toks.append(("ident", ident, start))
        else:
            if sym not in "+-*/^()[],":
                raise ExpressionError(f"unexpected character {sym!r}", start)
            toks.append((sym, sym, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, table, n):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.table = table
        self.used: dict = {}
        if table is not None:
            self.n = table.n
            self.lookup = {nm: i for i, nm in enumerate(table.names or (), 1)}
        else:
            self.lookup = {}
            top = 0
            for kind, val, _ in self.toks:
                if kind == "ident":
                    g = _GENERIC.match(val)
                    if g:
                        top = max(top, int(g.group(1)))
            self.n = max(n or 0, top, 1)

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExpressionError(f"expected {kind!r}, found {what}", tok[2])
        self.k += 1
        return tok

    def parse(self):
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionError(f"unexpected {tok[1]!r}", tok[2])
        return out

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term()
        if sign < 0:
            out = FreePoly.zero(self.n) - out
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            e = self.take("num")[1]
            base = base ** e
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("num")
                if den[1] == 0:
                    raise ExpressionError("zero denominator", den[2])
                return FreePoly.constant(self.n, Fraction(val, den[1]))
            return FreePoly.constant(self.n, val)
        if kind == "ident":
            self.take()
            return FreePoly.gen(self.n, self.resolve(val, pos))
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            if self.table is None:
                raise ExpressionError("brackets need an algebra spec", pos)
            try:
                return bracket(self.table, left, right)
            except ValueError as exc:
                raise ExpressionError(str(exc), pos) from None
        what = "end of input" if kind == "end" else repr(val)
        raise ExpressionError(f"unexpected {what}", pos)

    def resolve(self, name, pos):
        if name in self.lookup:
            i = self.lookup[name]
        else:
            g = _GENERIC.match(name)
            if not g:
                raise ExpressionError(f"unknown generator {name!r}", pos)
            i = int(g.group(1))
            if not 1 <= i <= self.n:
                raise ExpressionError(f"generator {name} outside X1..X{self.n}", pos)
        self.used[name] = i
        return i


def parse_expression(text: str, context: BracketTable | None = None, n: int | None = None) -> ParsedExpression:
    """Parse ``text`` over ``context``'s generators, or over ``X1..Xn`` when no table is given."""
    p = _Parser(text, context, n)
    poly = p.parse()
    return ParsedExpression(text, poly, dict(p.used))


def parse_poly(text: str, context: BracketTable | None = None, n: int | None = None) -> FreePoly:
    return parse_expression(text, context, n).poly
