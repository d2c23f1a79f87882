"""Base rings: finite fields, products of finite fields, F_p[x], F_p(t), F_p[x]/(f).

Every ring carries the characteristic ``p`` and the exponent ``base_exp`` of
the fixed prime power ``q = p**base_exp``; :func:`frobenius` is ``a -> a**q``.
Elements are immutable and know their ring, so arithmetic across different
rings raises instead of coercing.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import lru_cache

import numpy as np

from . import linalg
from . import polyfp as P
from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidParams,
    NotInvertible,
    NotIrreducible,
    NotPerfect,
    RingMismatch,
)

TABLE_LIMIT = 1 << 16


class BaseRing(ABC):
    """Commutative F_q-algebra with exact arithmetic."""

    p: int
    base_exp: int = 1
    is_field = False
    is_perfect = False
    is_domain = False
    is_finite_dimensional = False
    is_f_finite = True

    @property
    def q(self) -> int:
        return self.p**self.base_exp

    @property
    @abstractmethod
    def zero(self): ...

    @property
    @abstractmethod
    def one(self): ...

    @abstractmethod
    def __call__(self, x): ...

    @abstractmethod
    def frobenius(self, a, times=1): ...

    def qth_root(self, a, times=1):
        raise NotPerfect(f"{self} is not perfect: q-th roots need not exist")

    @abstractmethod
    def frobenius_basis_level(self, times=1) -> list: ...

    @abstractmethod
    def frobenius_decompose(self, a, times=1) -> list:
        """Coefficients ``c_b`` with ``a = sum_b b * c_b**(q**times)``.

        ``b`` runs over :meth:`frobenius_basis_level` in order.
        """

    def frobenius_basis(self) -> list:
        return self.frobenius_basis_level(1)

    @abstractmethod
    def random_element(self, rng, **kw): ...

    def symbols(self) -> dict:
        return {}

    @abstractmethod
    def to_json(self) -> dict: ...

    def check(self, a):
        if getattr(a, "ring", None) is not self and getattr(a, "ring", None) != self:
            raise RingMismatch(f"{a!r} is not an element of {self}")
        return a


# ---------------------------------------------------------------------------
# finite fields


class FieldSpec(BaseRing):
    """The finite field F_{p^r} with Frobenius ``a -> a**(p**base_exp)``.

    Elements are stored by index ``n = sum c_i p^i`` of their coefficient
    vector over the prime field with respect to ``modulus`` (low to high).
    Use :func:`GF` to get interned instances.
    """

    is_field = True
    is_perfect = True
    is_domain = True
    is_finite_dimensional = True

    def __init__(self, p: int, r: int = 1, base_exp: int = 1, modulus=None):
        if not P.is_prime(p):
            raise InvalidParams(f"p={p} is not prime")
        if r < 1 or base_exp < 1 or r % base_exp:
            raise InvalidParams(f"need base_exp | r, got r={r}, base_exp={base_exp}")
        if modulus is None:
            modulus = P.least_irreducible(p, r) if r > 1 else (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise InvalidParams("modulus must be monic of degree r")
        if not P.is_irreducible(list(modulus), p):
            raise NotIrreducible(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.r = r
        self.base_exp = base_exp
        self.modulus = modulus
        self.order = p**r
        self._key = (p, r, base_exp, modulus)
        self._tables = self.order <= TABLE_LIMIT
        if self._tables:
            self._build_tables()

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.base_exp == 1:
            return f"GF({self.order})"
        return f"GF({self.order}, q={self.q})"

    def to_json(self):
        d = {"p": self.p, "r": self.r, "modulus": list(self.modulus)}
        if self.base_exp != 1:
            d["baseExp"] = self.base_exp
        return d

    @classmethod
    def from_json(cls, d):
        return GF(d["p"], d.get("r", 1), d.get("baseExp", 1), d.get("modulus"))

    # -- tables -------------------------------------------------------------

    def _digits_of(self, n):
        out = []
        for _ in range(self.r):
            out.append(n % self.p)
            n //= self.p
        return out

    def _index_of(self, digits):
        n = 0
        for c in reversed(digits):
            n = n * self.p + (c % self.p)
        return n

    def _slow_mul(self, a, b):
        prod = P.mul(P.trim(self._digits_of(a)), P.trim(self._digits_of(b)), self.p)
        return self._index_of(P.mod(prod, list(self.modulus), self.p))

    def _build_tables(self):
        order = self.order
        m = order - 1
        factors = P._prime_factors(m) if m > 1 else []
        gen = 1
        if m > 1:
            for cand in range(2 if order > 2 else 1, order):
                if all(self._slow_pow(cand, m // ell) != 1 for ell in factors):
                    gen = cand
                    break
        exp = [0] * (2 * m if m else 2)
        log = [None] * order
        x = 1
        for k in range(m if m else 1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, gen)
        for k in range(m, 2 * m):
            exp[k] = exp[k - m]
        self._exp = exp
        self._log = log
        self._m = m if m else 1
        if self.p != 2:
            self._neg = [self._index_of([-c for c in self._digits_of(n)]) for n in range(order)]
            if order <= 256:
                dig = [self._digits_of(n) for n in range(order)]
                self._addtab = [
                    self._index_of([x + y for x, y in zip(dig[a], dig[b])])
                    for a in range(order)
                    for b in range(order)
                ]
            else:
                self._addtab = None

    def _slow_pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            e >>= 1
            if e:
                base = self._slow_mul(base, base)
        return result

    # -- raw index arithmetic ----------------------------------------------

    def _add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self._tables and self._addtab is not None:
            return self._addtab[a * self.order + b]
        return self._index_of([x + y for x, y in zip(self._digits_of(a), self._digits_of(b))])

    def _negi(self, a):
        if self.p == 2:
            return a
        if self._tables:
            return self._neg[a]
        return self._index_of([-c for c in self._digits_of(a)])

    def _mul(self, a, b):
        if not a or not b:
            return 0
        if self._tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def _pow(self, a, e):
        if e == 0:
            return 1
        if not a:
            if e < 0:
                raise DivisionByZero("zero has no inverse")
            return 0
        if self._tables:
            return self._exp[(self._log[a] * e) % self._m]
        e %= self.order - 1
        return self._slow_pow(a, e)

    # -- BaseRing interface -------------------------------------------------

    @property
    def zero(self):
        return FieldElem(self, 0)

    @property
    def one(self):
        return FieldElem(self, 1)

    @property
    def gen(self):
        """The class of ``w`` (the variable of the modulus)."""
        return FieldElem(self, self._index_of([0, 1]) if self.r > 1 else 0)

    def __call__(self, x):
        if isinstance(x, FieldElem):
            if x.field is self or x.field == self:
                return x
            raise FieldMismatch(f"{x!r} belongs to {x.field}, not {self}")
        if isinstance(x, (int, np.integer)):
            return FieldElem(self, int(x) % self.p)
        if isinstance(x, (list, tuple)):
            if len(x) > self.r:
                raise InvalidParams("too many coefficients")
            return FieldElem(self, self._index_of(list(x) + [0] * (self.r - len(x))))
        raise TypeError(f"cannot convert {x!r} to {self}")

    def from_index(self, n: int):
        if not 0 <= n < self.order:
            raise InvalidParams("index out of range")
        return FieldElem(self, n)

    def elements(self):
        return [FieldElem(self, n) for n in range(self.order)]

    def frobenius(self, a, times=1):
        a = self.check(a)
        return FieldElem(self, self._pow(a.n, self.q**times))

    def qth_root(self, a, times=1):
        a = self.check(a)
        # Frobenius has order r/base_exp on F_{p^r}
        period = self.r // self.base_exp
        k = (-times) % period
        return FieldElem(self, self._pow(a.n, self.q**k))

    def frobenius_basis_level(self, times=1):
        return [self.one]

    def frobenius_decompose(self, a, times=1):
        return [self.qth_root(a, times)]

    def random_element(self, rng, nonzero=False, **kw):
        if nonzero:
            return FieldElem(self, rng.randrange(1, self.order))
        return FieldElem(self, rng.randrange(self.order))

    def symbols(self):
        return {"w": self.gen} if self.r > 1 else {}

    def prime_field(self):
        return GF(self.p, 1)

    def subfield(self, degree: int, base_exp: int | None = None):
        if self.r % degree:
            raise InvalidParams(f"F_{self.p}^{degree} is not a subfield of {self}")
        return GF(self.p, degree, base_exp or 1)

    def __str__(self):
        return repr(self)


class FieldElem:
    """Element of a finite field; immutable, hashable."""

    __slots__ = ("field", "n")

    def __init__(self, field: FieldSpec, n: int):
        self.field = field
        self.n = n

    @property
    def ring(self):
        return self.field

    @property
    def coeffs(self) -> tuple:
        return tuple(self.field._digits_of(self.n))

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field is self.field or other.field == self.field:
                return other.n
            raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._add(self.n, o))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, self.field._negi(self.n))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._add(self.n, self.field._negi(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._add(o, self.field._negi(self.n)))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(self.n, o))

    __rmul__ = __mul__

    def inverse(self):
        if not self.n:
            raise DivisionByZero("division by zero in " + str(self.field))
        return FieldElem(self.field, self.field._pow(self.n, -1))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * FieldElem(self.field, o).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, o) * self.inverse()

    def __pow__(self, e):
        return FieldElem(self.field, self.field._pow(self.n, e))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.n == other.n and (self.field is other.field or self.field == other.field)
        if isinstance(other, (int, np.integer)):
            return self.n == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.n))

    def __bool__(self):
        return self.n != 0

    def __int__(self):
        if self.n >= self.field.p:
            raise ValueError(f"{self} is not in the prime field")
        return self.n

    def to_json(self):
        return list(self.coeffs)

    def __str__(self):
        if self.field.r == 1:
            return str(self.n)
        return P.to_str(P.trim(self.coeffs), "w")

    def __repr__(self):
        return f"{self.field!r}({self})"


@lru_cache(maxsize=None)
def _gf(p, r, base_exp, modulus):
    return FieldSpec(p, r, base_exp, modulus)


def GF(p: int, r: int = 1, base_exp: int = 1, modulus=None) -> FieldSpec:
    """Interned :class:`FieldSpec` (deterministic least-index modulus by default)."""
    if modulus is None:
        if not P.is_prime(p):
            raise InvalidParams(f"p={p} is not prime")
        if r < 1:
            raise InvalidParams("r must be positive")
        modulus = P.least_irreducible(p, r) if r > 1 else (0, 1)
    return _gf(p, r, base_exp, tuple(int(c) % p for c in modulus))


@lru_cache(maxsize=None)
def _embedding(small: FieldSpec, big: FieldSpec):
    if small.p != big.p or big.r % small.r:
        raise InvalidParams(f"{small} does not embed into {big}")
    # image of the generator: least-index root of small.modulus in big
    mod = small.modulus
    if small.r == 1:
        return {n: FieldElem(big, n) for n in range(small.order)}, {n: n for n in range(small.order)}
    root = None
    for n in range(big.order):
        x = FieldElem(big, n)
        acc = big.zero
        for c in reversed(mod):
            acc = acc * x + c
        if not acc:
            root = x
            break
    fwd = {}
    for e in small.elements():
        val = big.zero
        power = big.one
        for c in e.coeffs:
            val = val + power * c
            power = power * root
        fwd[e.n] = val
    back = {v.n: k for k, v in fwd.items()}
    return fwd, back


def embed(a: FieldElem, big: FieldSpec) -> FieldElem:
    """Image of ``a`` under the canonical embedding into ``big``."""
    if a.field == big:
        return a
    fwd, _ = _embedding(a.field, big)
    return fwd[a.n]


def restrict(a: FieldElem, small: FieldSpec) -> FieldElem:
    """Inverse of :func:`embed`; raises if ``a`` is not in the subfield."""
    if a.field == small:
        return a
    _, back = _embedding(small, a.field)
    if a.n not in back:
        raise InvalidParams(f"{a} does not lie in {small}")
    return FieldElem(small, back[a.n])


# ---------------------------------------------------------------------------
# products of finite fields


class ProductRing(BaseRing):
    """Finite product of finite fields (an Artinian reduced F_q-algebra)."""

    is_perfect = True
    is_finite_dimensional = True

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise InvalidParams("need at least one factor")
        ps = {f.p for f in factors}
        qs = {f.q for f in factors}
        if len(ps) != 1 or len(qs) != 1:
            raise InvalidParams("factors must share p and q")
        self.factors = factors
        self.p = factors[0].p
        self.base_exp = factors[0].base_exp
        self.is_field = len(factors) == 1
        self.is_domain = self.is_field

    def __eq__(self, other):
        return isinstance(other, ProductRing) and self.factors == other.factors

    def __hash__(self):
        return hash(("prod", self.factors))

    def __repr__(self):
        return " x ".join(repr(f) for f in self.factors)

    def to_json(self):
        return {"ring": "Product", "factors": [f.to_json() for f in self.factors]}

    def _make(self, parts):
        return ProductElem(self, tuple(parts))

    @property
    def zero(self):
        return self._make(f.zero for f in self.factors)

    @property
    def one(self):
        return self._make(f.one for f in self.factors)

    def idempotent(self, i):
        return self._make(f.one if j == i else f.zero for j, f in enumerate(self.factors))

    def __call__(self, x):
        if isinstance(x, ProductElem):
            if x.ring != self:
                raise RingMismatch(f"{x!r} is not in {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return self._make(f(x) for f in self.factors)
        if isinstance(x, (list, tuple)) and len(x) == len(self.factors):
            return self._make(f(v) for f, v in zip(self.factors, x))
        raise TypeError(f"cannot convert {x!r} to {self}")

    def frobenius(self, a, times=1):
        a = self.check(a)
        return self._make(f.frobenius(c, times) for f, c in zip(self.factors, a.parts))

    def qth_root(self, a, times=1):
        a = self.check(a)
        return self._make(f.qth_root(c, times) for f, c in zip(self.factors, a.parts))

    def frobenius_basis_level(self, times=1):
        return [self.one]

    def frobenius_decompose(self, a, times=1):
        return [self.qth_root(a, times)]

    def random_element(self, rng, nonzero=False, **kw):
        return self._make(f.random_element(rng, nonzero=nonzero) for f in self.factors)


class ProductElem:
    __slots__ = ("ring", "parts")

    def __init__(self, ring, parts):
        self.ring = ring
        self.parts = parts

    def _o(self, other):
        if isinstance(other, ProductElem):
            if other.ring != self.ring:
                raise RingMismatch("different product rings")
            return other.parts
        if isinstance(other, (int, np.integer)):
            return tuple(f(other) for f in self.ring.factors)
        return None

    def __add__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ProductElem(self.ring, tuple(a + b for a, b in zip(self.parts, o)))

    __radd__ = __add__

    def __neg__(self):
        return ProductElem(self.ring, tuple(-a for a in self.parts))

    def __sub__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ProductElem(self.ring, tuple(a - b for a, b in zip(self.parts, o)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return ProductElem(self.ring, tuple(a * b for a, b in zip(self.parts, o)))

    __rmul__ = __mul__

    def is_unit(self):
        return all(self.parts)

    def inverse(self):
        if not self.is_unit():
            raise NotInvertible(f"{self} is a zero divisor")
        return ProductElem(self.ring, tuple(a.inverse() for a in self.parts))

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return self * ProductElem(self.ring, o).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return ProductElem(self.ring, tuple(a**e for a in self.parts))

    def __eq__(self, other):
        o = self._o(other) if isinstance(other, (ProductElem, int, np.integer)) else None
        if o is None:
            return NotImplemented
        return self.parts == tuple(o)

    def __hash__(self):
        return hash(self.parts)

    def __bool__(self):
        return any(self.parts)

    def to_json(self):
        return [a.to_json() for a in self.parts]

    def __str__(self):
        return "[" + ", ".join(str(a) for a in self.parts) + "]"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# F_p[x] and F_p(t)


class PolyRing(BaseRing):
    """The polynomial ring F_p[x] (here q = p)."""

    is_domain = True

    def __init__(self, p: int, var: str = "x"):
        if not P.is_prime(p):
            raise InvalidParams(f"p={p} is not prime")
        self.p = p
        self.base_exp = 1
        self.var = var

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.p, self.var) == (other.p, other.var)

    def __hash__(self):
        return hash(("poly", self.p, self.var))

    def __repr__(self):
        return f"GF({self.p})[{self.var}]"

    def to_json(self):
        return {"ring": "PolyRing", "p": self.p}

    def _make(self, coeffs):
        return Poly(self, tuple(P.trim(coeffs)))

    @property
    def zero(self):
        return Poly(self, ())

    @property
    def one(self):
        return Poly(self, (1,))

    @property
    def gen(self):
        return Poly(self, (0, 1))

    def __call__(self, x):
        if isinstance(x, Poly):
            if x.ring != self:
                raise RingMismatch(f"{x!r} is not in {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return self._make([int(x) % self.p])
        if isinstance(x, (list, tuple)):
            return self._make([int(c) % self.p for c in x])
        raise TypeError(f"cannot convert {x!r} to {self}")

    def frobenius(self, a, times=1):
        a = self.check(a)
        return Poly(self, tuple(P.frobenius_substitute(list(a.coeffs), self.q**times)))

    def frobenius_basis_level(self, times=1):
        Q = self.q**times
        return [self._make([0] * b + [1]) for b in range(Q)]

    def frobenius_decompose(self, a, times=1):
        a = self.check(a)
        Q = self.q**times
        c = list(a.coeffs)
        return [self._make(c[b::Q]) for b in range(Q)]

    def random_element(self, rng, max_degree=3, nonzero=False, **kw):
        while True:
            d = rng.randint(0, max_degree)
            a = self._make([rng.randrange(self.p) for _ in range(d + 1)])
            if a or not nonzero:
                return a

    def symbols(self):
        return {self.var: self.gen}


class Poly:
    """Element of F_p[x]."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _o(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} and {other.ring}")
            return list(other.coeffs)
        if isinstance(other, (int, np.integer)):
            return P.trim([int(other) % self.ring.p])
        return None

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, tuple(P.add(list(self.coeffs), o, self.ring.p)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, tuple(P.neg(list(self.coeffs), self.ring.p)))

    def __sub__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, tuple(P.sub(list(self.coeffs), o, self.ring.p)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, tuple(P.mul(list(self.coeffs), o, self.ring.p)))

    __rmul__ = __mul__

    def is_unit(self):
        return len(self.coeffs) == 1

    def inverse(self):
        if not self.is_unit():
            raise NotInvertible(f"{self} is not a unit in {self.ring}")
        return Poly(self.ring, (pow(self.coeffs[0], -1, self.ring.p),))

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero")
        q, r = P.divmod_(list(self.coeffs), o, self.ring.p)
        if r:
            raise NotInvertible(f"{other} does not divide {self} in {self.ring}")
        return Poly(self.ring, tuple(q))

    def __divmod__(self, other):
        o = self._o(other)
        if not o:
            raise DivisionByZero("division by zero")
        q, r = P.divmod_(list(self.coeffs), o, self.ring.p)
        return Poly(self.ring, tuple(q)), Poly(self.ring, tuple(r))

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return Poly(self.ring, tuple(P.pow_(list(self.coeffs), e, self.ring.p)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return list(self.coeffs) == P.trim([int(other) % self.ring.p])
        return NotImplemented

    def __hash__(self):
        return hash(("poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def to_json(self):
        return list(self.coeffs)

    def __str__(self):
        return P.to_str(list(self.coeffs), self.ring.var)

    def __repr__(self):
        return f"{self.ring!r}({self})"


class RationalFunctionField(BaseRing):
    """The non-perfect field F_p(t); fractions reduced with monic denominator."""

    is_field = True
    is_domain = True

    def __init__(self, p: int, var: str = "t"):
        if not P.is_prime(p):
            raise InvalidParams(f"p={p} is not prime")
        self.p = p
        self.base_exp = 1
        self.var = var

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and (self.p, self.var) == (other.p, other.var)

    def __hash__(self):
        return hash(("ratfunc", self.p, self.var))

    def __repr__(self):
        return f"GF({self.p})({self.var})"

    def to_json(self):
        return {"ring": "RatFunc", "p": self.p}

    def fraction(self, num, den=(1,)):
        p = self.p
        num = P.norm(num, p)
        den = P.norm(den, p)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return RatFunc(self, (), (1,))
        g = P.gcd(num, den, p)
        if len(g) > 1:
            num = P.exact_div(num, g, p)
            den = P.exact_div(den, g, p)
        inv = pow(den[-1], -1, p)
        return RatFunc(self, tuple(P.scale(num, inv, p)), tuple(P.scale(den, inv, p)))

    @property
    def zero(self):
        return RatFunc(self, (), (1,))

    @property
    def one(self):
        return RatFunc(self, (1,), (1,))

    @property
    def gen(self):
        return RatFunc(self, (0, 1), (1,))

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.ring != self:
                raise RingMismatch(f"{x!r} is not in {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return self.fraction([int(x)])
        if isinstance(x, Poly):
            if x.ring.p != self.p:
                raise RingMismatch("characteristic mismatch")
            return self.fraction(list(x.coeffs))
        if isinstance(x, (list, tuple)):
            if len(x) == 2 and all(isinstance(c, (list, tuple)) for c in x):
                return self.fraction(list(x[0]), list(x[1]))
            return self.fraction(list(x))
        raise TypeError(f"cannot convert {x!r} to {self}")

    def frobenius(self, a, times=1):
        a = self.check(a)
        Q = self.q**times
        return RatFunc(
            self,
            tuple(P.frobenius_substitute(list(a.num), Q)),
            tuple(P.frobenius_substitute(list(a.den), Q)),
        )

    def frobenius_basis_level(self, times=1):
        Q = self.q**times
        return [self.fraction([0] * b + [1]) for b in range(Q)]

    def frobenius_decompose(self, a, times=1):
        # a = N/D = N D^(Q-1) / D^Q and D^Q = D(t^Q); split N D^(Q-1) by exponent mod Q
        a = self.check(a)
        Q = self.q**times
        p = self.p
        num = P.mul(list(a.num), P.pow_(list(a.den), Q - 1, p), p)
        return [self.fraction(num[b::Q], list(a.den)) for b in range(Q)]

    def random_element(self, rng, max_degree=2, nonzero=False, **kw):
        while True:
            num = [rng.randrange(self.p) for _ in range(rng.randint(0, max_degree) + 1)]
            den = [rng.randrange(self.p) for _ in range(rng.randint(0, max_degree))] + [1]
            a = self.fraction(num, den)
            if a or not nonzero:
                return a

    def symbols(self):
        return {self.var: self.gen}


class RatFunc:
    """Element of F_p(t)."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den):
        self.ring = ring
        self.num = num
        self.den = den

    def _o(self, other):
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring(int(other))
        return None

    def __add__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        p = self.ring.p
        if self.den == o.den:
            return self.ring.fraction(P.add(list(self.num), list(o.num), p), list(self.den))
        num = P.add(P.mul(list(self.num), list(o.den), p), P.mul(list(o.num), list(self.den), p), p)
        return self.ring.fraction(num, P.mul(list(self.den), list(o.den), p))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ring, tuple(P.neg(list(self.num), self.ring.p)), self.den)

    def __sub__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        p = self.ring.p
        return self.ring.fraction(
            P.mul(list(self.num), list(o.num), p), P.mul(list(self.den), list(o.den), p)
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by zero in " + repr(self.ring))
        return self.ring.fraction(list(self.den), list(self.num))

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        p = self.ring.p
        return RatFunc(
            self.ring, tuple(P.pow_(list(self.num), e, p)), tuple(P.pow_(list(self.den), e, p))
        )

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.ring == other.ring and self.num == other.num and self.den == other.den
        if isinstance(other, (int, np.integer)):
            return self == self.ring(int(other))
        return NotImplemented

    def __hash__(self):
        return hash(("ratfunc", self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def to_json(self):
        return [list(self.num), list(self.den)]

    def __str__(self):
        v = self.ring.var
        num = P.to_str(list(self.num), v)
        if self.den == (1,):
            return num
        den = P.to_str(list(self.den), v)
        if "+" in num:
            num = f"({num})"
        if "+" in den or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"{self.ring!r}({self})"


# ---------------------------------------------------------------------------
# F_p[x]/(f)


class QuotientRing(BaseRing):
    """Finite-dimensional quotient F_p[x]/(f), e.g. a fat point F_p[x]/(x^e)."""

    is_finite_dimensional = True

    def __init__(self, p: int, modulus, var: str = "x"):
        if not P.is_prime(p):
            raise InvalidParams(f"p={p} is not prime")
        f = P.monic(P.norm(modulus, p), p)
        if len(f) < 2:
            raise InvalidParams("modulus must have positive degree")
        self.p = p
        self.base_exp = 1
        self.modulus = tuple(f)
        self.dim = len(f) - 1
        self.var = var
        self.is_perfect = P.is_squarefree(f, p)
        self.is_field = P.is_irreducible(f, p)
        self.is_domain = self.is_field

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash(("quot", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p})[{self.var}]/({P.to_str(list(self.modulus), self.var)})"

    def to_json(self):
        return {"ring": "Quotient", "p": self.p, "modulus": list(self.modulus)}

    def _make(self, coeffs):
        return QuotElem(self, tuple(P.mod(P.norm(coeffs, self.p), list(self.modulus), self.p)))

    @property
    def zero(self):
        return QuotElem(self, ())

    @property
    def one(self):
        return self._make([1])

    @property
    def gen(self):
        return self._make([0, 1])

    def __call__(self, x):
        if isinstance(x, QuotElem):
            if x.ring != self:
                raise RingMismatch(f"{x!r} is not in {self}")
            return x
        if isinstance(x, (int, np.integer)):
            return self._make([int(x)])
        if isinstance(x, (list, tuple)):
            return self._make(list(x))
        raise TypeError(f"cannot convert {x!r} to {self}")

    def vector(self, a):
        v = list(self.check(a).coeffs)
        return v + [0] * (self.dim - len(v))

    def from_vector(self, v):
        return self._make([int(c) for c in v])

    def elements(self):
        from itertools import product

        return [self._make(list(c)) for c in product(range(self.p), repeat=self.dim)]

    def _frob_matrix(self, times):
        rows = [self.vector(self.frobenius(self._make([0] * i + [1]), times)) for i in range(self.dim)]
        return np.array(rows, dtype=np.int64)

    def frobenius(self, a, times=1):
        a = self.check(a)
        c = P.powmod(list(a.coeffs), self.q**times, list(self.modulus), self.p)
        return QuotElem(self, tuple(c))

    def qth_root(self, a, times=1):
        if not self.is_perfect:
            return super().qth_root(a, times)
        a = self.check(a)
        # Frobenius permutes the finite ring; walk its orbit.
        orbit = [a]
        while True:
            nxt = self.frobenius(orbit[-1])
            if nxt == a:
                break
            orbit.append(nxt)
        return orbit[(-times) % len(orbit)]

    def _module_matrix(self, basis, times):
        # F_p-linear map (c_b)_b -> sum_b b * c_b^(q^times)
        F = self._frob_matrix(times)
        blocks = []
        for b in basis:
            Mb = np.array(
                [self.vector(b * self._make([0] * i + [1])) for i in range(self.dim)], dtype=np.int64
            )
            blocks.append(linalg.matmul(F, Mb, self.p))
        return np.vstack(blocks) if blocks else np.zeros((0, self.dim), dtype=np.int64)

    @lru_cache(maxsize=None)
    def frobenius_basis_level(self, times=1):
        basis = []
        current = np.zeros((0, self.dim), dtype=np.int64)
        for i in range(self.dim):
            if linalg.rank(current, self.p) == self.dim:
                break
            cand = self._make([0] * i + [1])
            trial = self._module_matrix(basis + [cand], times)
            if linalg.rank(trial, self.p) > linalg.rank(current, self.p):
                basis.append(cand)
                current = trial
        return basis

    def frobenius_decompose(self, a, times=1):
        basis = self.frobenius_basis_level(times)
        M = self._module_matrix(basis, times)
        x = linalg.solve_left(M, self.vector(a), self.p)
        return [self.from_vector(x[k * self.dim : (k + 1) * self.dim]) for k in range(len(basis))]

    def random_element(self, rng, nonzero=False, **kw):
        while True:
            a = self._make([rng.randrange(self.p) for _ in range(self.dim)])
            if a or not nonzero:
                return a

    def symbols(self):
        return {self.var: self.gen}


class QuotElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _o(self, other):
        if isinstance(other, QuotElem):
            if other.ring != self.ring:
                raise RingMismatch("different quotient rings")
            return list(other.coeffs)
        if isinstance(other, (int, np.integer)):
            return P.trim([int(other) % self.ring.p])
        return None

    def __add__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return QuotElem(self.ring, tuple(P.add(list(self.coeffs), o, self.ring.p)))

    __radd__ = __add__

    def __neg__(self):
        return QuotElem(self.ring, tuple(P.neg(list(self.coeffs), self.ring.p)))

    def __sub__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return QuotElem(self.ring, tuple(P.sub(list(self.coeffs), o, self.ring.p)))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return self.ring._make(P.mul(list(self.coeffs), o, self.ring.p))

    __rmul__ = __mul__

    def inverse(self):
        g, s, _ = P.xgcd(list(self.coeffs), list(self.ring.modulus), self.ring.p)
        if g != [1]:
            raise NotInvertible(f"{self} is not a unit in {self.ring}")
        return self.ring._make(s)

    def __truediv__(self, other):
        o = self._o(other)
        if o is None:
            return NotImplemented
        return self * QuotElem(self.ring, tuple(o)).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        c = P.powmod(list(self.coeffs), e, list(self.ring.modulus), self.ring.p)
        return QuotElem(self.ring, tuple(c))

    def __eq__(self, other):
        o = self._o(other) if isinstance(other, (QuotElem, int, np.integer)) else None
        if o is None:
            return NotImplemented
        return list(self.coeffs) == P.mod(o, list(self.ring.modulus), self.ring.p)

    def __hash__(self):
        return hash(("quot", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def to_json(self):
        return list(self.coeffs)

    def __str__(self):
        return P.to_str(list(self.coeffs), self.ring.var)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# module-level operations


def frobenius(a, times: int = 1):
    """``a ** (q ** times)`` in the ring of ``a``."""
    return a.ring.frobenius(a, times)


def qth_root(a, times: int = 1):
    """The unique ``b`` with ``b ** (q ** times) == a``; raises NotPerfect otherwise."""
    return a.ring.qth_root(a, times)


def frobenius_basis(R: BaseRing) -> list:
    """Generators of ``R`` as a module over its subring of q-th powers."""
    return R.frobenius_basis()


def trace_to_prime(a: FieldElem) -> FieldElem:
    """Absolute trace ``sum_i a^(p^i)`` from F_{p^m} down to F_p."""
    F = a.field
    acc = F.zero
    x = a
    for _ in range(F.r):
        acc = acc + x
        x = x ** F.p
    return F.prime_field()(acc.n)
