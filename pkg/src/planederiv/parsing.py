"""Recursive-descent parser for polynomial expressions.

Grammar (explicit ``*`` required, no juxtaposition):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | power
    power  := atom ('^' NAT)?
    atom   := NAME | NUMBER | '(' expr ')'

NUMBER is an integer or a rational literal ``p/q``; NAME is ``x``, ``y``
(two variables) or ``x1`` .. ``xn``.  Exponents must be non-negative
integer literals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, var_names


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = tuple(expected)
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at position {position}{hint}")


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM, NAME, OP, END
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            # rational literal p/q
            if j < n and src[j] == "/":
                k = j + 1
                while k < n and src[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ParseError("malformed rational literal", j, ("digit",))
                tokens.append(_Token("NUM", src[i:k], i))
                i = k
            else:
                tokens.append(_Token("NUM", src[i:j], i))
                i = j
            continue
        if ch.isalpha():
            j = i + 1
            while j < n and (src[j].isalnum()):
                j += 1
            tokens.append(_Token("NAME", src[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append(_Token("OP", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], nvars: int):
        self.tokens = tokens
        self.k = 0
        self.nvars = nvars
        names = var_names(nvars)
        self.varmap = {name: i for i, name in enumerate(names)}
        # x1..xn aliases are always accepted
        for i in range(nvars):
            self.varmap.setdefault(f"x{i + 1}", i)

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def next(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, text: str):
        tok = self.peek()
        if tok.kind != "OP" or tok.text != text:
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, (text,))
        return self.next()

    def parse(self) -> Poly:
        p = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos, ("+", "-", "*", "end"))
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text in "+-":
                self.next()
                q = self.term()
                p = p + q if tok.text == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.text == "*":
                self.next()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.next()
            return -self.factor()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "^":
            self.next()
            exp = self.peek()
            if exp.kind != "NUM" or "/" in exp.text:
                raise ParseError("exponent must be a non-negative integer", exp.pos, ("integer",))
            self.next()
            return base ** int(exp.text)
        return base

    def atom(self) -> Poly:
        tok = self.next()
        if tok.kind == "NUM":
            return Poly.const(self.nvars, Fraction(tok.text))
        if tok.kind == "NAME":
            idx = self.varmap.get(tok.text)
            if idx is None:
                raise ParseError(f"unknown variable {tok.text!r}", tok.pos,
                                 tuple(sorted(self.varmap)))
            return Poly.var(self.nvars, idx)
        if tok.kind == "OP" and tok.text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos,
                         ("number", "variable", "("))


def parse_poly(src: str, nvars: int) -> Poly:
    """Parse ``src`` into a canonical Poly with the given variable count."""
    if not src or not src.strip():
        raise ParseError("empty expression", 0, ("expression",))
    return _Parser(_tokenize(src), nvars).parse()
