"""Recursive-descent parser for transfer-function expressions in ``s``.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/' | <implicit>) unary)*
    unary   := ('+' | '-') unary | power
    power   := atom (('^' | '**') INTEGER)?
    atom    := NUMBER | 's' | '(' expr ')'

Implicit multiplication applies before ``s`` and ``(``, so ``2s^3``,
``s(s+1)`` and ``(s+1)(s+2)`` all work.  Numbers are integers, decimals
(``0.25``, ``1e-3``) or fractions ``p/q``; an integer or decimal immediately
followed by ``/`` and an integer is read as one rational literal, which is
why ``1/2s^2`` means ``(1/2) s^2``.  Decimal input is converted exactly.

Numeric factors written at the top level of a single product (``-2*(s+1)/(s+3)``,
``-1/(s+1)``) become the gain ``K``.  A parenthesised group is always a
polynomial: its numeric factors stay in its coefficients.
"""

import re
from fractions import Fraction

from .errors import ParseError, ZeroDenominator
from .poly import Polynomial

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+(?![.\deE]))?)
  | (?P<pow>\*\*|\^)
  | (?P<op>[-+*/()])
  | (?P<var>s)
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Rat:
    """gain * num / den, with the gain kept apart only for bare numeric factors."""

    __slots__ = ("gain", "num", "den")

    def __init__(self, gain, num, den):
        self.gain = gain
        self.num = num
        self.den = den

    def folded(self):
        return _Rat(Fraction(1), self.num.scale(self.gain), self.den)

    def mul(self, other):
        return _Rat(self.gain * other.gain, self.num * other.num, self.den * other.den)

    def div(self, other):
        if other.gain == 0 or other.num.is_zero():
            raise ZeroDivisionError
        return _Rat(self.gain / other.gain, self.num * other.den, self.den * other.num)

    def add(self, other, sign=1):
        a, b = self.folded(), other.folded()
        num = a.num * b.den + (b.num * a.den).scale(sign)
        return _Rat(Fraction(1), num, a.den * b.den)


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value:
            self.fail(f"expected {value!r}")
        return self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            value = value.add(self.term(), sign)
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok, _ = self.peek()
            if tok == "*":
                self.take()
                value = value.mul(self.unary())
            elif tok == "/":
                slash = self.take()
                rhs = self.unary()
                try:
                    value = value.div(rhs)
                except ZeroDivisionError:
                    raise ZeroDenominator(
                        f"division by zero at position {slash[2]} in {self.text!r}"
                    ) from None
            elif kind == "var" or tok == "(":
                value = value.mul(self.unary())
            else:
                return value

    def unary(self):
        tok = self.peek()[1]
        if tok == "-":
            self.take()
            v = self.unary()
            return _Rat(-v.gain, v.num, v.den)
        if tok == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "pow":
            return base
        self.take()
        kind, tok, pos = self.take()
        if kind != "number" or not tok.isdigit():
            raise ParseError("exponent must be a non-negative integer", self.text, pos)
        k = int(tok)
        return _Rat(base.gain**k, base.num**k, base.den**k)

    def atom(self):
        kind, tok, pos = self.take()
        if kind == "number":
            p, _, q = tok.partition("/")
            try:
                value = Fraction(p) / Fraction(q or 1)
            except ValueError:
                raise ParseError(f"bad number {tok!r}", self.text, pos) from None
            except ZeroDivisionError:
                raise ZeroDenominator(f"zero denominator in literal {tok!r}") from None
            return _Rat(value, Polynomial([1]), Polynomial([1]))
        if kind == "var":
            return _Rat(Fraction(1), Polynomial([0, 1]), Polynomial([1]))
        if tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner.folded()
        if kind == "end":
            raise ParseError("unexpected end of expression", self.text, pos)
        raise ParseError(f"unexpected {tok!r}", self.text, pos)


def parse_rational(text: str):
    """Parse ``text`` into ``(gain, num, den)`` without any normalisation."""
    r = _Parser(text).parse()
    return r.gain, r.num, r.den


def parse_polynomial(text: str) -> Polynomial:
    """Parse a polynomial expression in ``s`` (no division by ``s`` terms)."""
    gain, num, den = parse_rational(text)
    if den.degree() != 0:
        raise ParseError("not a polynomial", text, 0)
    return num.scale(gain / den[0])
