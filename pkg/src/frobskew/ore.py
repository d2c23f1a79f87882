"""Ore conditions for R[F]: explicit witnesses, localization, the skew field D.

Convention: ``r * s^-1`` is rewritten as ``s~^-1 * r~`` by the left witness
(``r~ s = s~ r``) and ``s^-1 * r`` as ``r~ * s^-1`` by the right witness
(``s r~ = r s``).  The skew field D consists of right fractions ``n d^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DenominatorNotInS,
    DivisionByZero,
    NotAField,
    NotPerfect,
    RingMismatch,
    ZeroDenominator,
)
from .fields import PolyRing, Poly, RationalFunctionField
from . import linalg
from . import polyfp as P
from .skew import SkewPoly, div_right, gcld_lcrm, gcrd_lclm

LEFT = "left"
RIGHT = "right"


def _as_scalar(ring, s):
    if isinstance(s, SkewPoly):
        if s.degree not in (0,) and s:
            raise ValueError("denominator must be a base-ring element")
        return s[0]
    return ring(s)


@dataclass(frozen=True)
class OreWitness:
    """``side == 'left'``: ``r_tilde*s == s_tilde*r``; ``'right'``: ``s*r_tilde == r*s_tilde``."""

    s: object
    r: SkewPoly
    r_tilde: SkewPoly
    s_tilde: object
    side: str

    def __post_init__(self):
        if not self.verify():
            raise ArithmeticError(f"{self.side} Ore witness identity failed")

    def verify(self) -> bool:
        R = self.r.ring
        s = SkewPoly.const(R, self.s)
        st = SkewPoly.const(R, self.s_tilde)
        if self.side == LEFT:
            return self.r_tilde * s == st * self.r
        return s * self.r_tilde == self.r * st


def left_ore_witness(s, r: SkewPoly) -> OreWitness:
    """``r~ = sum r_i s^(q^n - q^i) F^i`` and ``s~ = s^(q^n)``, ``n = deg r``."""
    R = r.ring
    s = _as_scalar(R, s)
    if not s:
        raise ZeroDenominator("Ore witness for s = 0")
    q = R.q
    n = r.degree if r else 0
    qn = q**n
    rt = SkewPoly(R, {i: c * s ** (qn - q**i) for i, c in r.coeffs.items()})
    return OreWitness(s, r, rt, s**qn, LEFT)


def right_ore_witness(s, r: SkewPoly) -> OreWitness:
    """``r~ = sum r_i s^(q^i - 1) F^i`` and ``s~ = s``."""
    R = r.ring
    s = _as_scalar(R, s)
    if not s:
        raise ZeroDenominator("Ore witness for s = 0")
    q = R.q
    rt = SkewPoly(R, {i: c * s ** (q**i - 1) for i, c in r.coeffs.items()})
    return OreWitness(s, r, rt, s, RIGHT)


# ---------------------------------------------------------------------------
# localization at S = {f^n} (or S = R \ {0}) for R = F_p[x]


class LocalizedSkewPoly:
    """Element of ``(S^-1 R)[F]``: a left polynomial with coefficients in F_p(x)
    whose denominators are (up to units) powers of ``f``.  ``f=None`` means
    every nonzero denominator is allowed.
    """

    __slots__ = ("poly", "f")

    def __init__(self, poly: SkewPoly, f=None):
        self.poly = poly
        self.f = tuple(f) if f is not None else None
        for c in poly.coeffs.values():
            _check_in_S(list(c.den), self.f, poly.ring.p)

    @property
    def ring(self):
        return self.poly.ring

    def _same(self, other):
        if not isinstance(other, LocalizedSkewPoly):
            return NotImplemented
        if other.f != self.f:
            raise RingMismatch("different multiplicative sets")
        return other

    def __mul__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return LocalizedSkewPoly(self.poly * o.poly, self.f)

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return LocalizedSkewPoly(self.poly + o.poly, self.f)

    def __eq__(self, other):
        if not isinstance(other, LocalizedSkewPoly):
            return NotImplemented
        return self.f == other.f and self.poly == other.poly

    def __hash__(self):
        return hash((self.poly, self.f))

    def __str__(self):
        return str(self.poly)

    __repr__ = __str__


def _check_in_S(den, f, p):
    """``den`` must be a unit times a power of ``f``."""
    den = P.norm(den, p)
    if not den:
        raise ZeroDenominator("zero denominator")
    if f is None:
        return
    f = P.norm(f, p)
    if len(f) <= 1:
        if len(den) != 1:
            raise DenominatorNotInS(f"{P.to_str(den)} is not a unit")
        return
    while len(den) > 1:
        q, r = P.divmod_(den, f, p)
        if r:
            raise DenominatorNotInS(f"{P.to_str(den)} is not a power of {P.to_str(f)}")
        den = q


def fraction_field_of(R: PolyRing) -> RationalFunctionField:
    return RationalFunctionField(R.p, var=R.var)


def localization_normal_form(num: SkewPoly, den, f=None) -> LocalizedSkewPoly:
    """Image of ``num * den^-1`` in ``(S^-1 R)[F]``, ``R = F_p[x]``.

    The left witness gives ``num * den^-1 = den~^-1 * num~``; then divide
    coefficient-wise.
    """
    R = num.ring
    if not isinstance(R, PolyRing):
        raise RingMismatch("localization is implemented for R = F_p[x]")
    den = _as_scalar(R, den)
    fcoeffs = None
    if f is not None:
        fcoeffs = list((f if isinstance(f, Poly) else R(f)).coeffs)
    _check_in_S(list(den.coeffs), fcoeffs, R.p)
    w = left_ore_witness(den, num)
    K = fraction_field_of(R)
    st = K(w.s_tilde)
    poly = SkewPoly(K, {i: K(c) / st for i, c in w.r_tilde.coeffs.items()})
    return LocalizedSkewPoly(poly, fcoeffs)


def fraction_product(n1: SkewPoly, d1, n2: SkewPoly, d2):
    """``(n1 d1^-1)(n2 d2^-1) = (n1 r~)(d2 d1)^-1`` with ``d1 r~ = n2 d1``."""
    w = right_ore_witness(d1, n2)
    R = n1.ring
    return n1 * w.r_tilde, _as_scalar(R, d2) * _as_scalar(R, d1)


# ---------------------------------------------------------------------------
# the skew field D = Quot(k[F]) for a perfect finite field k


def _require_perfect_field(R):
    if not R.is_field:
        raise NotAField(f"{R} is not a field")
    if not R.is_perfect:
        raise NotPerfect(f"{R} is not perfect; D needs q-th roots")


class SkewFraction:
    """Right fraction ``num * den^-1`` in the skew field of ``k[F]``.

    Stored reduced (``gcrd(num, den) = 1``) with monic ``den``; this normal
    form is unique, so equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SkewPoly, den: SkewPoly | None = None, _reduced: bool = False):
        R = num.ring
        if den is None:
            den = SkewPoly.one(R)
        num._check(den)
        _require_perfect_field(R)
        if not den:
            raise DivisionByZero("zero denominator in the skew field")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    @classmethod
    def from_skew(cls, a: SkewPoly):
        return cls(a)

    @classmethod
    def zero(cls, R):
        return cls(SkewPoly.zero(R))

    @classmethod
    def one(cls, R):
        return cls(SkewPoly.one(R))

    def _lift(self, other):
        if isinstance(other, SkewFraction):
            return other
        if isinstance(other, SkewPoly):
            return SkewFraction(other)
        return SkewFraction(SkewPoly.const(self.ring, other))

    def __add__(self, other):
        return d_add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self):
        return SkewFraction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return d_add(self, -self._lift(other))

    def __rsub__(self, other):
        return d_add(self._lift(other), -self)

    def __mul__(self, other):
        return d_mul(self, self._lift(other))

    def __rmul__(self, other):
        return d_mul(self._lift(other), self)

    def inverse(self):
        return d_inv(self)

    def __pow__(self, e: int):
        if e == -1:
            return d_inv(self)
        if e < 0:
            return d_inv(self) ** (-e)
        out = SkewFraction.one(self.ring)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        return d_mul(self, d_inv(self._lift(other)))

    def __eq__(self, other):
        if not isinstance(other, SkewFraction):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def to_left_fraction(self):
        """``(d', n')`` with ``num * den^-1 = d'^-1 * n'`` (for display)."""
        if not self.num:
            return SkewPoly.one(self.ring), self.num
        g = gcrd_lclm(self.num, self.den)
        return g.lu, g.lv

    def __str__(self):
        if self.den == SkewPoly.one(self.ring):
            return str(self.num)
        num, den = (f"({x})" if " " in str(x) else str(x) for x in (self.num, self.den))
        return f"{num}*{den}^-1"

    __repr__ = __str__


def _reduce(num: SkewPoly, den: SkewPoly):
    R = num.ring
    if not num:
        return num, SkewPoly.one(R)
    g = gcrd_lclm(num, den).gcrd
    if g.degree > 0:
        num, r1 = div_right(num, g)
        den, r2 = div_right(den, g)
        assert not r1 and not r2
    # right-multiply by c so that den becomes monic
    c = R.qth_root(den.lead.inverse(), den.degree)
    return num.scale_right(c), den.scale_right(c)


def d_add(a: SkewFraction, b: SkewFraction) -> SkewFraction:
    """Sum over the least common right multiple ``m = d1 u = d2 v``."""
    if a.den == b.den:
        return SkewFraction(a.num + b.num, a.den)
    L = gcld_lcrm(a.den, b.den)
    return SkewFraction(a.num * L.ru + b.num * L.rv, L.lcrm)


def d_mul(a: SkewFraction, b: SkewFraction) -> SkewFraction:
    """``n1 d1^-1 n2 d2^-1 = n1 x (d2 y)^-1`` where ``d1 x = n2 y``."""
    if not a.num or not b.num:
        return SkewFraction.zero(a.ring)
    L = gcld_lcrm(a.den, b.num)
    return SkewFraction(a.num * L.ru, b.den * L.rv)


def d_inv(a: SkewFraction) -> SkewFraction:
    if not a.num:
        raise DivisionByZero("zero has no inverse in the skew field")
    return SkewFraction(a.den, a.num)


# ---------------------------------------------------------------------------
# bounded search for common right multiples


@dataclass
class SearchResult:
    """Outcome of :func:`common_right_multiple_search`.

    ``found`` is False exactly when no ``(u, v) != 0`` with ``deg u, deg v <=
    maxdeg`` and ``a*u == b*v`` exists.
    """

    found: bool
    maxdeg: int
    u: SkewPoly | None = None
    v: SkewPoly | None = None
    unknowns: int = 0
    equations: int = 0
    checks: dict = field(default_factory=dict)


def _right_coords(m: SkewPoly, offsets, sizes):
    """Coordinates of ``m`` in the right-K basis ``{beta F^i}``."""
    R = m.ring
    out = {}
    for i, c in m.coeffs.items():
        parts = R.frobenius_decompose(c, i) if i else [c]
        for b, x in enumerate(parts):
            if x:
                out[offsets[i] + b] = x
    return out


def common_right_multiple_search(a: SkewPoly, b: SkewPoly, maxdeg: int) -> SearchResult:
    """Exhaustive search for ``a*u == b*v != 0`` with ``deg u, deg v <= maxdeg``.

    Writing ``u = sum_{j, beta} beta F^j c_{j,beta}`` (``beta`` over a basis of
    K over K^(q^j)) makes ``a*u - b*v`` right-K-linear in the unknowns, so the
    search is one sparse linear system over K.
    """
    a._check(b)
    R = a.ring
    if not R.is_field:
        raise NotAField(f"{R} is not a field")
    if not a or not b or maxdeg < 0:
        return SearchResult(False, maxdeg)
    top = max(a.degree, b.degree) + maxdeg
    bases = [R.frobenius_basis_level(i) if i else [R.one] for i in range(top + 1)]
    sizes = [len(B) for B in bases]
    offsets = [0]
    for n in sizes[:-1]:
        offsets.append(offsets[-1] + n)
    cols = []
    labels = []
    for side, poly, sign in (("u", a, 1), ("v", b, -1)):
        for j in range(maxdeg + 1):
            for beta in bases[j]:
                col = _right_coords(poly * SkewPoly(R, {j: beta}), offsets, sizes)
                if sign < 0:
                    col = {k: -x for k, x in col.items()}
                cols.append(col)
                labels.append((side, j, beta))
    dep = linalg.sparse_kernel_vector(cols, R.zero, R.one)
    nunk = len(cols)
    neq = offsets[-1] + sizes[-1]
    if dep is None:
        return SearchResult(False, maxdeg, unknowns=nunk, equations=neq)
    parts = {"u": {}, "v": {}}
    for (side, j, beta), c in zip(labels, dep):
        if c:
            term = beta * R.frobenius(c, j)
            acc = parts[side]
            acc[j] = acc[j] + term if j in acc else term
    u = SkewPoly(R, parts["u"])
    v = SkewPoly(R, parts["v"])
    au, bv = a * u, b * v
    ok = au == bv and bool(au)
    if not ok:
        raise ArithmeticError("common right multiple failed verification")
    return SearchResult(True, maxdeg, u, v, nunk, neq, {"a*u == b*v": True, "nonzero": True})
