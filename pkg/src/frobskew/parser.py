"""Text syntax for skew polynomials and ring headers.

Grammar (``*`` is the noncommutative product, evaluated left to right)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' uint)?
    atom   := uint | symbol | 'F' | '(' expr ')'

``symbol`` is ``x``, ``t`` or ``w`` when the base ring provides it.  The
right operand of ``/`` must be a unit of the base ring.
"""

from __future__ import annotations

import re

from .errors import ExprSyntaxError, InvalidParams, NotInvertible, UnknownSymbol
from .fields import GF, PolyRing, ProductRing, QuotientRing, RationalFunctionField
from .skew import SkewPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            out.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            if m.group(3) not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {m.group(3)!r}", position=start)
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0
        self.symbols = ring.symbols()

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val):
        tok = self.take()
        if tok[1] != val or tok[0] == "end":
            raise ExprSyntaxError(f"expected {val!r}", position=tok[2])
        return tok

    def parse(self) -> SkewPoly:
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", position=0)
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", position=tok[2])
        return out

    def expr(self):
        neg = False
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                acc = acc * self._inverse_constant(rhs, pos)
        return acc

    def _inverse_constant(self, b: SkewPoly, pos):
        if not b or b.degree != 0:
            raise NotInvertible(f"divisor at position {pos} is not a nonzero base-ring constant")
        c = b[0]
        return SkewPoly.const(self.ring, c.inverse())

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^", self.peek()[2]):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ExprSyntaxError("exponent must be an unsigned integer", position=tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, val, pos = self.take()
        R = self.ring
        if kind == "num":
            return SkewPoly.const(R, int(val))
        if kind == "name":
            if val == "F":
                return SkewPoly.F(R)
            if val in self.symbols:
                return SkewPoly.const(R, self.symbols[val])
            raise UnknownSymbol(f"symbol {val!r} at position {pos} is not defined over {R}")
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError(f"unexpected {val or 'end of input'!r}", position=pos)


def parse_skew_expr(text: str, ring) -> SkewPoly:
    """Parse ``text`` into the normal form of an element of ``ring[F]``."""
    return _Parser(text, ring).parse()


def parse_ring_element(text: str, ring):
    """Parse an expression that must have F-degree 0."""
    a = parse_skew_expr(text, ring)
    if a.degree not in (0,) and a:
        raise InvalidParams(f"{text!r} is not a base-ring element")
    return a[0]


def ring_from_spec(spec: dict):
    """Base ring from a header such as ``{"ring": "GF", "p": 2, "r": 2}``."""
    kind = spec.get("ring", "GF")
    try:
        p = int(spec["p"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams("ring header needs an integer 'p'") from exc
    if kind == "GF":
        return GF(p, int(spec.get("r", 1)), int(spec.get("baseExp", 1)), spec.get("modulus"))
    if kind == "PolyRing":
        return PolyRing(p)
    if kind == "RatFunc":
        return RationalFunctionField(p)
    if kind == "Quotient":
        return QuotientRing(p, spec["modulus"])
    if kind == "Product":
        return ProductRing([ring_from_spec(dict(f, ring="GF")) for f in spec["factors"]])
    raise InvalidParams(f"unsupported ring {kind!r}")
