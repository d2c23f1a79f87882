"""The Frobenius skew ring R[F].

Elements are left polynomials ``sum r_i F^i`` stored sparsely; the only
commutation rule is ``F^i * s = s^(q^i) * F^i``.  Division needs a field:
``div_right`` only uses forward Frobenius, ``div_left`` needs q-th roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .errors import DivisionByZero, EmptyInput, NotAField, NotPerfect, RingMismatch


@total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("-inf - -inf is undefined")
        return self

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_MinusInfinity, ())


MinusInfinity = _MinusInfinity()


class SkewPoly:
    """Element of R[F] in left-polynomial normal form."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring, coeffs=None):
        self.ring = ring
        clean = {}
        for i, c in (coeffs or {}).items():
            if i < 0:
                raise ValueError("negative F-degree")
            if c:
                clean[int(i)] = c
        self.coeffs = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def one(cls, ring):
        return cls(ring, {0: ring.one})

    @classmethod
    def F(cls, ring):
        return cls(ring, {1: ring.one})

    @classmethod
    def const(cls, ring, c):
        return cls(ring, {0: ring(c)})

    @classmethod
    def monomial(cls, ring, c, i):
        return cls(ring, {i: ring(c)})

    @classmethod
    def from_list(cls, ring, coeffs):
        """``coeffs[i]`` is the coefficient of ``F^i``."""
        return cls(ring, {i: ring(c) for i, c in enumerate(coeffs)})

    # -- structure ----------------------------------------------------------

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else MinusInfinity

    @property
    def lead(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[max(self.coeffs)]

    def __getitem__(self, i):
        return self.coeffs.get(i, self.ring.zero)

    def is_monic(self):
        return bool(self.coeffs) and self.lead == self.ring.one

    def to_list(self):
        if not self.coeffs:
            return []
        return [self[i] for i in range(self.degree + 1)]

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return None
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def _lift(self, other):
        o = self._check(other)
        if o is not None:
            return o
        try:
            return SkewPoly.const(self.ring, other)
        except (TypeError, RingMismatch) as exc:
            raise RingMismatch(f"cannot use {other!r} in {self.ring}[F]") from exc

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.coeffs)
        for i, c in o.coeffs.items():
            out[i] = out[i] + c if i in out else c
        return SkewPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.ring, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return skew_mul(self, self._lift(other))

    def __rmul__(self, other):
        return skew_mul(self._lift(other), self)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in R[F]")
        result = SkewPoly.one(self.ring)
        for _ in range(e):
            result = result * self
        return result

    def scale_left(self, c):
        """``c * self`` for a base-ring scalar ``c``."""
        return SkewPoly(self.ring, {i: c * a for i, a in self.coeffs.items()})

    def scale_right(self, c):
        """``self * c`` for a base-ring scalar ``c``."""
        R = self.ring
        return SkewPoly(R, {i: a * R.frobenius(c, i) for i, a in self.coeffs.items()})

    def shift(self, k: int):
        """``self * F^k``."""
        return SkewPoly(self.ring, {i + k: a for i, a in self.coeffs.items()})

    def map_coeffs(self, fn, ring=None):
        return SkewPoly(ring or self.ring, {i: fn(c) for i, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == SkewPoly.const(self.ring, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0])))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        return to_str(self)

    def __repr__(self):
        return f"SkewPoly({self})"


def _coeff_str(c) -> str:
    s = str(c)
    if any(ch in s for ch in "+-/ ") or s.startswith("["):
        return f"({s})"
    return s


def to_str(a: SkewPoly) -> str:
    """Descending F-degree, e.g. ``x^3*F^2 + (w+1)*F + 1``."""
    if not a.coeffs:
        return "0"
    terms = []
    for i in sorted(a.coeffs, reverse=True):
        c = a.coeffs[i]
        mono = "" if i == 0 else ("F" if i == 1 else f"F^{i}")
        if i == 0:
            terms.append(_coeff_str(c) if len(a.coeffs) > 1 else str(c))
        elif c == a.ring.one:
            terms.append(mono)
        else:
            terms.append(f"{_coeff_str(c)}*{mono}")
    return " + ".join(terms)


def skew_mul(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Normal form of ``a * b`` using ``r F^i * s F^j = r s^(q^i) F^(i+j)``."""
    if a.ring is not b.ring and a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    R = a.ring
    out = {}
    for i, r in a.coeffs.items():
        for j, s in b.coeffs.items():
            term = r * (R.frobenius(s, i) if i else s)
            k = i + j
            out[k] = out[k] + term if k in out else term
    return SkewPoly(R, out)


def _require_field(R):
    if not R.is_field:
        raise NotAField(f"{R} is not a field; Euclidean division needs a field")


def _require_perfect_field(R):
    _require_field(R)
    if not R.is_perfect:
        raise NotPerfect(f"{R} is not perfect; this needs q-th roots of coefficients")


def div_right(A: SkewPoly, B: SkewPoly):
    """``(Q, R)`` with ``A = Q*B + R`` and ``deg R < deg B``; any field."""
    A._check(B)
    Rg = A.ring
    _require_field(Rg)
    if not B:
        raise DivisionByZero("division by the zero skew polynomial")
    m = B.degree
    bm = B.lead
    Q = {}
    rem = A
    while rem and rem.degree >= m:
        n = rem.degree
        c = rem.lead / Rg.frobenius(bm, n - m)
        Q[n - m] = c
        rem = rem - SkewPoly(Rg, {n - m: c}) * B
    return SkewPoly(Rg, Q), rem


def div_left(A: SkewPoly, B: SkewPoly):
    """``(Q, R)`` with ``A = B*Q + R`` and ``deg R < deg B``; perfect fields only."""
    A._check(B)
    Rg = A.ring
    _require_perfect_field(Rg)
    if not B:
        raise DivisionByZero("division by the zero skew polynomial")
    m = B.degree
    bm = B.lead
    Q = {}
    rem = A
    while rem and rem.degree >= m:
        n = rem.degree
        c = Rg.qth_root(rem.lead / bm, m)
        Q[n - m] = c
        rem = rem - B * SkewPoly(Rg, {n - m: c})
    return SkewPoly(Rg, Q), rem


def monic_left(a: SkewPoly):
    """``(c*a, c)`` with ``c*a`` monic."""
    c = a.lead.inverse()
    return a.scale_left(c), c


def monic_right(a: SkewPoly):
    """``(a*c, c)`` with ``a*c`` monic; needs q-th roots."""
    c = a.ring.qth_root(a.lead.inverse(), a.degree)
    return a.scale_right(c), c


@dataclass(frozen=True)
class GcrdResult:
    """``gcrd = u*A + v*B`` and ``lclm = lu*A = lv*B``."""

    gcrd: SkewPoly
    lclm: SkewPoly
    u: SkewPoly
    v: SkewPoly
    lu: SkewPoly
    lv: SkewPoly


@dataclass(frozen=True)
class GcldResult:
    """``gcld = A*u + B*v`` and ``lcrm = A*ru = B*rv``."""

    gcld: SkewPoly
    lcrm: SkewPoly
    u: SkewPoly
    v: SkewPoly
    ru: SkewPoly
    rv: SkewPoly


def gcrd_lclm(A: SkewPoly, B: SkewPoly) -> GcrdResult:
    """Monic greatest common right divisor and least common left multiple.

    Extended Euclid on ``div_right``; works over any field.
    """
    A._check(B)
    R = A.ring
    _require_field(R)
    if not A and not B:
        raise EmptyInput("gcrd of two zero polynomials")
    one, zero = SkewPoly.one(R), SkewPoly.zero(R)
    r0, r1 = A, B
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        Q, rem = div_right(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - Q * s1
        t0, t1 = t1, t0 - Q * t1
    g, c = monic_left(r0)
    u, v = s0.scale_left(c), t0.scale_left(c)
    if A and B:
        lclm, c2 = monic_left(s1 * A)
        lu, lv = s1.scale_left(c2), (-t1).scale_left(c2)
    else:
        lclm, lu, lv = zero, (zero if A else one), (one if A else zero)
    return GcrdResult(g, lclm, u, v, lu, lv)


def gcld_lcrm(A: SkewPoly, B: SkewPoly) -> GcldResult:
    """Monic greatest common left divisor and least common right multiple.

    Extended Euclid on ``div_left``; perfect fields only.
    """
    A._check(B)
    R = A.ring
    _require_perfect_field(R)
    if not A and not B:
        raise EmptyInput("gcld of two zero polynomials")
    one, zero = SkewPoly.one(R), SkewPoly.zero(R)
    r0, r1 = A, B
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        Q, rem = div_left(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - s1 * Q
        t0, t1 = t1, t0 - t1 * Q
    g, c = monic_right(r0)
    u, v = s0.scale_right(c), t0.scale_right(c)
    if A and B:
        lcrm, c2 = monic_right(A * s1)
        ru, rv = s1.scale_right(c2), (-t1).scale_right(c2)
    else:
        lcrm, ru, rv = zero, (zero if A else one), (one if A else zero)
    return GcldResult(g, lcrm, u, v, ru, rv)


def right_ideal_generator(gens) -> SkewPoly:
    """Monic ``g`` with ``sum_i g_i * k[F] = g * k[F]`` over a perfect field."""
    gens = list(gens)
    if not gens:
        raise EmptyInput("no generators")
    R = gens[0].ring
    _require_perfect_field(R)
    g = SkewPoly.zero(R)
    for h in gens:
        if not h:
            continue
        g = monic_right(h)[0] if not g else gcld_lcrm(g, h).gcld
    return g


def random_skew(ring, rng, max_degree: int = 3, **kw) -> SkewPoly:
    """Random element of ``ring[F]`` with F-degree at most ``max_degree``."""
    d = rng.randint(0, max_degree)
    return SkewPoly(ring, {i: ring.random_element(rng, **kw) for i in range(d + 1)})
