"""Text forms of polynomials and of field elements.

Expressions use one generator symbol (``x`` by default), integers and
decimal-free rationals, ``+ - * /``, ``^`` or ``**`` with integer exponents,
parentheses, and implicit multiplication such as ``15x`` or ``2(x+1)``.
A field is written ``Q[x]/(x^2+1)`` or just by its defining polynomial.
A polynomial may also be given as a bracketed ascending coefficient list,
``[1, -4, 5]`` meaning ``5x^2 - 4x + 1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .nf.field import FieldElement, NumberField
from .nf.subfield import cached_field
from .poly import padd, pmul, pscale, psub, trim


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int, token: str | None = None):
        self.message = message
        self.text = text
        self.pos = pos
        self.token = token
        where = f"token {token!r} at position {pos}" if token is not None else f"position {pos}"
        super().__init__(f"{message} ({where} in {text!r})")


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # num, op, name, end
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        num, op, name, bad = m.groups()
        start = m.start(m.lastindex)
        if bad is not None:
            raise ParseError("unexpected character", text, start, bad)
        if num is not None:
            out.append(Token("num", num, start))
        elif op is not None:
            out.append(Token("op", "^" if op == "**" else op, start))
        else:
            out.append(Token("name", name, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    """Recursive descent over an arithmetic structure given by callbacks."""

    def __init__(self, text: str, var: str, const: Callable, gen: Callable, divide: Callable):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.var = var
        self.const = const
        self.gen = gen
        self.divide = divide

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.pos, tok.value if tok.kind != "end" else "<end>")

    def eat(self, value: str) -> bool:
        if self.tok.kind == "op" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.tok.kind == "end":
            self.fail("empty expression")
        v = self.expr()
        if self.tok.kind != "end":
            self.fail("unexpected token")
        return v

    def expr(self):
        v = self.term()
        while True:
            if self.eat("+"):
                v = v + self.term()
            elif self.eat("-"):
                v = v - self.term()
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            if self.eat("*"):
                v = v * self.unary()
            elif self.tok.kind == "op" and self.tok.value == "/":
                tok = self.tok
                self.i += 1
                v = self.divide(v, self.unary(), tok)
            elif self.tok.kind in ("num", "name") or (self.tok.kind == "op" and self.tok.value == "("):
                v = v * self.power()  # implicit multiplication
            else:
                return v

    def unary(self):
        if self.eat("-"):
            return -self.unary()
        if self.eat("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.eat("^"):
            neg = self.eat("-")
            tok = self.tok
            if tok.kind != "num":
                self.fail("exponent must be an integer")
            self.i += 1
            e = int(tok.value)
            if neg:
                return self.divide(self.const(1), base**e, tok)
            return base**e
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return self.const(int(tok.value))
        if tok.kind == "name":
            if tok.value != self.var:
                self.fail(f"unknown symbol (the generator is {self.var!r})")
            self.i += 1
            return self.gen()
        if self.eat("("):
            v = self.expr()
            if not self.eat(")"):
                self.fail("expected ')'")
            return v
        self.fail("expected a number, the generator or '('")


class _Poly:
    """Rational polynomial wrapper with operator overloading for the parser."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = trim(list(c)) or [Fraction(0)]

    def __add__(self, o):
        return _Poly(padd(self.c, o.c))

    def __sub__(self, o):
        return _Poly(psub(self.c, o.c))

    def __mul__(self, o):
        return _Poly(pmul(self.c, o.c))

    def __neg__(self):
        return _Poly(pscale(self.c, -1))

    def __pow__(self, e: int):
        out = _Poly([Fraction(1)])
        for _ in range(e):
            out = out * self
        return out


def parse_rational_poly(text: str, var: str = "x") -> list[Fraction]:
    """Ascending rational coefficients of a polynomial expression."""
    if text.strip().startswith("["):
        try:
            vals = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError("malformed coefficient list", text, exc.pos) from None
        if not isinstance(vals, list) or not vals or not all(isinstance(v, int) for v in vals):
            raise ParseError("coefficient list must hold integers", text, 0, text[:1])
        return [Fraction(v) for v in vals]

    def divide(a: _Poly, b: _Poly, tok: Token):
        if len(b.c) != 1:
            raise ParseError("division by a non-constant polynomial", text, tok.pos, tok.value)
        if b.c[0] == 0:
            raise ParseError("division by zero", text, tok.pos, tok.value)
        return _Poly(pscale(a.c, Fraction(1) / b.c[0]))

    p = _Parser(text, var, lambda n: _Poly([Fraction(n)]), lambda: _Poly([Fraction(0), Fraction(1)]), divide)
    return p.parse().c


def parse_poly(text: str, var: str = "x") -> list[int]:
    """Ascending integer coefficients; the expression must have integer coefficients."""
    coeffs = parse_rational_poly(text, var)
    if any(c.denominator != 1 for c in coeffs):
        raise ParseError("polynomial must have integer coefficients", text, 0, text.strip()[:1])
    if all(c == 0 for c in coeffs):
        raise ParseError("the zero polynomial is not allowed", text, 0, text.strip()[:1])
    return [int(c) for c in coeffs]


_FIELD = re.compile(r"^\s*Q\s*\[\s*([A-Za-z_]\w*)\s*\]\s*/\s*\((.*)\)\s*$", re.S)


def parse_field_spec(text: str) -> tuple[list[int], str]:
    """Defining polynomial and generator name from ``Q[x]/(g)`` or a bare polynomial."""
    m = _FIELD.match(text)
    if m:
        var = m.group(1)
        inner = m.group(2)
        offset = m.start(2)
        try:
            return parse_poly(inner, var), var
        except ParseError as exc:
            raise ParseError(exc.message, text, exc.pos + offset, exc.token) from None
    if text.strip().startswith("Q"):
        raise ParseError("field must look like Q[x]/(polynomial)", text, text.index("Q"), "Q")
    return parse_poly(text), "x"


def parse_field(text: str, max_degree: int | None = None) -> tuple[NumberField, str]:
    """The number field named by ``text`` (monic irreducible integer polynomial)."""
    g, var = parse_field_spec(text)
    if g[-1] != 1:
        raise ParseError("defining polynomial must be monic", text, 0, text.strip()[:1])
    if len(g) < 2:
        raise ParseError("defining polynomial must have degree >= 1", text, 0, text.strip()[:1])
    if max_degree is not None and len(g) - 1 > max_degree:
        raise ParseError(f"field degree {len(g) - 1} exceeds the cap {max_degree}", text, 0, text.strip()[:1])
    from .poly import is_irreducible_over_Q

    if not is_irreducible_over_Q(g)[0]:
        raise ParseError("defining polynomial is reducible over Q", text, 0, text.strip()[:1])
    return cached_field(tuple(g)), var


def parse_element(text: str, K: NumberField, var: str = "x") -> FieldElement:
    """An element of K written in its generator; ``/`` divides inside K.

    >>> K = cached_field((1, 0, 1))
    >>> str(parse_element("1/(2+x)", K))
    '-(1/5)*x+2/5'
    """

    def divide(a: FieldElement, b: FieldElement, tok: Token):
        if b.is_zero():
            raise ParseError("division by zero", text, tok.pos, tok.value)
        return a / b

    p = _Parser(text, var, K.rational, lambda: K.gen, divide)
    return p.parse()


__all__ = [
    "ParseError",
    "Token",
    "parse_element",
    "parse_field",
    "parse_field_spec",
    "parse_poly",
    "parse_rational_poly",
    "tokenize",
]
