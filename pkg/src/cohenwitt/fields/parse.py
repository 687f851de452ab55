"""Text form of field elements.

Polynomials are written in the variables ``t`` (when r = 1) or ``t1..tr`` and
the extension generator ``w``, with integer digits read mod p, ``*``, ``^``,
``+``, ``-`` and parentheses.  A fraction prints as ``(<num>)/(<den>)``; a
polynomial prints bare.  Terms print in ascending graded-lex order, so the
output of :func:`format_element` is canonical and re-parses to an equal value.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .poly import grlex_key

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\w*)|(.))")


def _format_mono(field, e) -> str:
    parts = []
    for name, a in zip(field.var_names, e):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_poly(field, f) -> str:
    if not f:
        return "0"
    gf = field.gf
    terms = []
    for e in sorted(f, key=grlex_key):
        c = f[e]
        mono = _format_mono(field, e)
        cs = gf.to_str(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif "+" in cs:
            terms.append(f"({cs})*{mono}")
        else:
            terms.append(f"{cs}*{mono}")
    return "+".join(terms)


def format_element(x) -> str:
    field = x.field
    num = format_poly(field, x.num)
    if field.R.is_one(x.den):
        return num
    return f"({num})/({format_poly(field, x.den)})"


class _Parser:
    def __init__(self, field, text: str):
        self.field = field
        self.text = text
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"cannot tokenize {text!r}")
            pos = m.end()
            num, ident, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif ident is not None:
                self.tokens.append(("id", ident))
            elif sym is not None and not sym.isspace():
                self.tokens.append(("sym", sym))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty element string")
        x = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return x

    def expr(self):
        x = self.term()
        while self.peek() in (("sym", "+"), ("sym", "-")):
            _, op = self.take()
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.factor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            _, op = self.take()
            y = self.factor()
            x = x * y if op == "*" else x / y
        return x

    def factor(self):
        if self.peek() == ("sym", "-"):
            self.take()
            return -self.factor()
        x = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            neg = False
            if self.peek() == ("sym", "-"):
                self.take()
                neg = True
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            x = x ** (-val if neg else val)
        return x

    def atom(self):
        k = self.field
        kind, val = self.take()
        if kind == "num":
            return k.from_int(val)
        if kind == "id":
            if val == "w":
                return k.w()
            if val == "t" and k.r == 1:
                return k.gen(0)
            m = re.fullmatch(r"t(\d+)", val)
            if m and 1 <= int(m.group(1)) <= k.r:
                return k.gen(int(m.group(1)) - 1)
            raise ParseError(f"unknown symbol {val!r} for {k}")
        if kind == "sym" and val == "(":
            x = self.expr()
            self.expect(")")
            return x
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_element(field, text: str):
    try:
        return _Parser(field, str(text)).parse()
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc
