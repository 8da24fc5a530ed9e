"""Recursive-descent parser for the polynomial text grammar.

Accepted syntax: integers, ``+ - * / ^`` (``**`` is an alias for ``^``),
parentheses, and identifiers from a declared variable list.  ``*`` may be
omitted between adjacent factors (``3x^2y``), division is only allowed by
nonzero constants, and whitespace is ignored.
"""

import re
from fractions import Fraction

from ..errors import ParseError
from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", column=bad + 1)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif ident is not None:
            out.append(("id", ident, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2] + 1)

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if t[1] == "+" else p - q
            else:
                return p

    def term(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            p = self.term()
            return -p if t[1] == "-" else p
        p = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                p = p * self.power()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                q = self.power()
                if not q.is_constant() or not q:
                    self.error("division only by nonzero constants", t)
                p = p.scale(Fraction(1) / Fraction(q.constant_term()))
            elif t[0] in ("num", "id") or (t[0] == "op" and t[1] == "("):
                p = p * self.power()
            else:
                return p

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.error("exponent must be a nonnegative integer", e)
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return MultiPoly.constant(t[1], self.variables)
        if t[0] == "id":
            if t[1] not in self.variables:
                self.error(f"unknown variable {t[1]!r}", t)
            return MultiPoly.var(t[1], self.variables)
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if t[0] == "end":
            self.error("unexpected end of input", t)
        self.error(f"unexpected token {t[1]!r}", t)


def parse_poly(text, variables):
    """Parse ``text`` into a :class:`MultiPoly` over ``variables``.

    >>> str(parse_poly("3/2*x^2*y - z + 1", ["x", "y", "z"]))
    '3/2*x^2*y - z + 1'
    """
    return _Parser(text, variables).parse()
