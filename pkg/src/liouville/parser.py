"""Recursive-descent reader for rational functions in one variable.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | factor
    factor := base ('^' ['-'] integer)?
    base   := integer | name | 'sqrt' '(' expr ')' | '(' expr ')'

Fractions are written with '/'.  At most one free name may appear; other
names must be bound through ``params``.  ``sqrt`` takes a rational constant
and returns an element of the surd field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from liouville.algebra.numbers import as_rational, is_rational, sqrt_rational
from liouville.algebra.ratfunc import RatFunc
from liouville.errors import ParseError, ZeroDenominator

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("int", m.group(1), start))
        elif m.group(2):
            out.append(Token("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start,
                                 {"integer", "name", "(", "+", "-", "*", "/", "^", ")"})
            out.append(Token("op", ch, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _constant(value: RatFunc):
    try:
        return value.constant_value()
    except ValueError:
        return None


def parse_rational(text: str) -> Fraction:
    """'3', '-7/2', ' 5 / 4 ' -> Fraction; anything else is a ParseError."""
    c = _constant(parse_ratfunc(text))
    if c is None or not is_rational(c):
        raise ParseError("expected a rational number", 0, {"integer", "integer/integer"})
    return as_rational(c)


class _Parser:
    def __init__(self, text: str, params: dict, variable: str | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.params = {k: RatFunc.const(v) for k, v in (params or {}).items()}
        self.variable = variable

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(f"expected {text!r}", self.tok.pos, {text})
        return self._advance()

    def parse(self) -> RatFunc:
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError("unexpected trailing input", self.tok.pos, {"+", "-", "*", "/", "^", "end of input"})
        return value

    def expr(self) -> RatFunc:
        acc = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RatFunc:
        acc = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self._advance()
            rhs = self.unary()
            if op.text == "*":
                acc = acc * rhs
            else:
                if not rhs:
                    raise ParseError("division by zero", op.pos, set())
                acc = acc / rhs
        return acc

    def unary(self) -> RatFunc:
        if self.tok.kind == "op" and self.tok.text in "+-":
            op = self._advance().text
            value = self.unary()
            return -value if op == "-" else value
        return self.factor()

    def factor(self) -> RatFunc:
        base = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._advance()
            sign = 1
            if self.tok.kind == "op" and self.tok.text == "-":
                self._advance()
                sign = -1
            if self.tok.kind != "int":
                raise ParseError("exponent must be an integer", self.tok.pos, {"integer"})
            n = sign * int(self._advance().text)
            if n < 0:
                if not base:
                    raise ParseError("zero raised to a negative power", self.tok.pos, set())
                return (1 / base) ** (-n)
            return base ** n
        return base

    def base(self) -> RatFunc:
        t = self.tok
        if t.kind == "int":
            self._advance()
            return RatFunc.const(int(t.text))
        if t.kind == "op" and t.text == "(":
            self._advance()
            value = self.expr()
            self._expect(")")
            return value
        if t.kind == "name":
            self._advance()
            if t.text == "sqrt":
                return self._sqrt(t)
            if t.text in self.params:
                return self.params[t.text]
            if self.variable is None:
                self.variable = t.text
            elif t.text != self.variable:
                raise ParseError(f"second free name {t.text!r} (the variable is {self.variable!r}); "
                                 "bind parameters with --param", t.pos, {self.variable})
            return RatFunc.x()
        raise ParseError("expected a number, a name or '('", t.pos, {"integer", "name", "(", "-"})

    def _sqrt(self, t: Token) -> RatFunc:
        self._expect("(")
        arg = self.expr()
        self._expect(")")
        c = _constant(arg)
        if c is None or not is_rational(c):
            raise ParseError("sqrt takes a rational constant", t.pos, set())
        return RatFunc.const(sqrt_rational(as_rational(c)))


def parse_expression(text: str, params: dict | None = None, variable: str | None = None) -> tuple[RatFunc, str]:
    """(value, variable name); the name defaults to 'x' for constant input."""
    p = _Parser(text, params, variable)
    try:
        value = p.parse()
    except ZeroDenominator as exc:
        raise ParseError(str(exc), 0, set()) from exc
    return value, p.variable or "x"


def parse_ratfunc(text: str, params: dict | None = None, variable: str | None = None) -> RatFunc:
    return parse_expression(text, params, variable)[0]


def parse_bindings(items) -> dict:
    """['k=3', 'm=-1/2'] -> {'k': Fraction(3), 'm': Fraction(-1, 2)}."""
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ParseError(f"binding {item!r} is not of the form name=rational", 0, {"name=rational"})
        out[name] = parse_rational(value)
    return out
