"""Shared expression grammar for presentations, fixtures and the CLI.

    expr   := term (('+'|'-') term)*
    term   := int ['*' factor ('*' factor)*] | factor ('*' factor)*
    factor := name ['^' nat]

Parsing accepts a superset with parenthesised subexpressions (the stored
relation families use them); printed output always stays inside the plain
grammar, and parse(print(x)) == x.  Parsing yields a list of
(coefficient, {name: power}) terms; interpreters turn that into polynomials
over a generator list or into graded module elements.
"""

from __future__ import annotations

import re
from typing import Mapping, Sequence

from .poly import MultiPoly

_TOKEN = re.compile(
    r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))"
)

_KINDS = ("int", "name", "pow", "mul", "plus", "minus", "lpar", "rpar")


class ExprError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ExprError(f"unexpected character at {text[pos:pos+10]!r}")
            break
        pos = m.end()
        for i, kind in enumerate(_KINDS, start=1):
            if m.group(i):
                out.append((kind, m.group(i)))
                break
    return out


class _Parser:
    """Terms are dicts {frozen monomial: coeff} over name->power monomials."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse_expr(self) -> dict:
        total = self.parse_signed_term()
        while self.peek() in ("plus", "minus"):
            op = self.take()[0]
            nxt = self.parse_term()
            if op == "minus":
                nxt = {m: -c for m, c in nxt.items()}
            total = _add(total, nxt)
        if self.peek() is not None:
            raise ExprError(f"trailing input near {self.tokens[self.i][1]!r}")
        return total

    def parse_subexpr(self) -> dict:
        total = self.parse_signed_term()
        while self.peek() in ("plus", "minus"):
            op = self.take()[0]
            nxt = self.parse_term()
            if op == "minus":
                nxt = {m: -c for m, c in nxt.items()}
            total = _add(total, nxt)
        return total

    def parse_signed_term(self) -> dict:
        sign = 1
        while self.peek() in ("plus", "minus"):
            if self.take()[0] == "minus":
                sign = -sign
        t = self.parse_term()
        return t if sign == 1 else {m: -c for m, c in t.items()}

    def parse_term(self) -> dict:
        out = self.parse_factor()
        while self.peek() == "mul":
            self.take()
            out = _mul(out, self.parse_factor())
        return out

    def parse_factor(self) -> dict:
        kind = self.peek()
        if kind is None:
            raise ExprError("dangling operator")
        if kind == "int":
            return {frozenset(): int(self.take()[1])}
        if kind == "name":
            name = self.take()[1]
            power = 1
            if self.peek() == "pow":
                self.take()
                if self.peek() != "int":
                    raise ExprError("expected an exponent after '^'")
                power = int(self.take()[1])
            return {frozenset({(name, power)}): 1}
        if kind == "lpar":
            self.take()
            inner = self.parse_subexpr()
            if self.peek() != "rpar":
                raise ExprError("missing closing parenthesis")
            self.take()
            power = 1
            if self.peek() == "pow":
                self.take()
                if self.peek() != "int":
                    raise ExprError("expected an exponent after '^'")
                power = int(self.take()[1])
            out = {frozenset(): 1}
            for _ in range(power):
                out = _mul(out, inner)
            return out
        raise ExprError(f"unexpected token {self.tokens[self.i][1]!r}")


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        da = dict(ma)
        for mb, cb in b.items():
            m = dict(da)
            for name, p in mb:
                m[name] = m.get(name, 0) + p
            key = frozenset(m.items())
            v = out.get(key, 0) + ca * cb
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def parse_terms(text: str) -> list[tuple[int, dict[str, int]]]:
    """Parse to [(coeff, {name: power}), ...]; raises ExprError on junk."""
    tokens = _tokenize(text)
    if not tokens:
        return []
    result = _Parser(tokens).parse_expr()
    out = []
    for mono, coeff in result.items():
        out.append((coeff, dict(mono)))
    out.sort(key=lambda t: sorted(t[1].items()))
    return out


def parse_poly(text: str, variables: Sequence[str], defs: Mapping[str, MultiPoly] | None = None) -> MultiPoly:
    """Parse into a MultiPoly over `variables`; `defs` supplies named shorthands."""
    variables = tuple(variables)
    out = MultiPoly(variables)
    for coeff, mono in parse_terms(text):
        piece = MultiPoly.const(variables, coeff)
        for name, power in mono.items():
            if defs and name in defs:
                piece = piece * defs[name] ** power
            else:
                try:
                    base = MultiPoly.var(variables, name)
                except ValueError:
                    raise ExprError(f"unknown name {name!r}") from None
                piece = piece * base ** power
        out = out + piece
    return out


def print_poly(p: MultiPoly) -> str:
    return str(p)
