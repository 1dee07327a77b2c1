"""Recursive-descent parser for polynomial expressions.

Grammar (EBNF)::

    expr     = term { ("+" | "-") term } ;
    term     = factor { "*" factor } ;
    factor   = { "+" | "-" } atom [ "^" integer ] ;
    atom     = rational | identifier | "(" expr ")" ;
    rational = integer [ "/" integer ] ;

Multiplication is always explicit, ``^`` takes a non-negative integer
exponent, and ``/`` appears only inside rational literals such as
``5/3``.  Syntax errors carry the character offset of the offending
token.  ``parse(text)`` collects variables in order of first appearance;
``parse(text, variables)`` checks identifiers against a fixed table.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ExprSyntaxError
from .poly import Poly

_OPS = set("+-*^/()")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], variables: Optional[Sequence[str]]):
        self.tokens = tokens
        self.index = 0
        self.strict = variables is not None
        self.variables: List[str] = list(variables) if variables else []
        # (exponent-map keyed by name, coeff) pairs; flattened once the
        # variable table is final
        self.pending: List[Tuple[dict, Fraction]] = []

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {tok.text!r}" if tok.text else f"expected {kind!r}, found end of input",
                tok.pos,
            )
        return self.advance()

    # each parse method returns a list of (name->exp dict, Fraction) terms

    def parse_expr(self) -> List[Tuple[dict, Fraction]]:
        terms = self.parse_term()
        while self.peek().kind in "+-":
            op = self.advance().kind
            rhs = self.parse_term()
            if op == "-":
                rhs = [(m, -c) for m, c in rhs]
            terms = terms + rhs
        return terms

    def parse_term(self) -> List[Tuple[dict, Fraction]]:
        acc = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            rhs = self.parse_factor()
            acc = _multiply(acc, rhs)
        return acc

    def parse_factor(self) -> List[Tuple[dict, Fraction]]:
        sign = 1
        while self.peek().kind in "+-":
            if self.advance().kind == "-":
                sign = -sign
        base = self.parse_atom()
        if self.peek().kind == "^":
            caret = self.advance()
            tok = self.peek()
            if tok.kind != "int":
                raise ExprSyntaxError("exponent must be a non-negative integer", tok.pos if tok.kind != "end" else caret.pos)
            power = int(self.advance().text)
            result = [({}, Fraction(1))]
            for _ in range(power):
                result = _multiply(result, base)
            base = result
        if sign < 0:
            base = [(m, -c) for m, c in base]
        return base

    def parse_atom(self) -> List[Tuple[dict, Fraction]]:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.text))
            if self.peek().kind == "/":
                self.advance()
                den = self.peek()
                if den.kind != "int":
                    raise ExprSyntaxError("expected an integer denominator", den.pos)
                self.advance()
                if int(den.text) == 0:
                    raise ExprSyntaxError("zero denominator", den.pos)
                value = value / int(den.text)
            return [({}, value)]
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name not in self.variables:
                if self.strict:
                    raise ExprSyntaxError(f"unknown variable {name!r}", tok.pos)
                self.variables.append(name)
            return [({name: 1}, Fraction(1))]
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            closing = self.peek()
            if closing.kind != ")":
                raise ExprSyntaxError("unbalanced parenthesis", closing.pos)
            self.advance()
            return inner
        if tok.kind == "/":
            raise ExprSyntaxError("'/' is only allowed inside rational literals", tok.pos)
        msg = "unexpected end of input" if tok.kind == "end" else f"unexpected token {tok.text!r}"
        raise ExprSyntaxError(msg, tok.pos)


def _multiply(lhs: List[Tuple[dict, Fraction]], rhs: List[Tuple[dict, Fraction]]) -> List[Tuple[dict, Fraction]]:
    out: List[Tuple[dict, Fraction]] = []
    for m1, c1 in lhs:
        for m2, c2 in rhs:
            merged = dict(m1)
            for name, e in m2.items():
                merged[name] = merged.get(name, 0) + e
            out.append((merged, c1 * c2))
    return out


def parse(text: str, variables: Optional[Sequence[str]] = None) -> Poly:
    """Parse an expression into a :class:`Poly`.

    With ``variables`` the identifier set is fixed and unknown names are
    syntax errors; without it the table is collected in order of first
    appearance.
    """
    parser = _Parser(_tokenize(text), variables)
    terms = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError(f"unexpected token {trailing.text!r}", trailing.pos)
    table = tuple(parser.variables)
    index = {name: i for i, name in enumerate(table)}
    accum: dict = {}
    for mono, coeff in terms:
        e = [0] * len(table)
        for name, k in mono.items():
            e[index[name]] = k
        key = tuple(e)
        accum[key] = accum.get(key, Fraction(0)) + coeff
    return Poly(table, accum)


def render(p: Poly) -> str:
    """Canonical string form; inverse of :func:`parse` over the same table."""
    return str(p)
