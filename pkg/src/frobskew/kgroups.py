"""K_0-level computations: crystal classes, the function-sheaf trace,
ranks over the skew field D, and the Chow/Frobenius demonstration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from . import polyfp
from .cartier import (
    CartierModule,
    PointSet,
    SimpleFactor,
    coefficient_field,
    delta_crystal,
    random_cartier,
    simple_factors,
)
from .errors import InvalidParams, MultiplePoints, NotPerfect
from .fields import FieldSpec
from .fmodules import FModule, twist
from .ore import SkewFraction


@dataclass(frozen=True)
class K0Class:
    """Finite Z-combination of simple crystals, keyed canonically."""

    p: int
    base_exp: int
    terms: tuple = ()  # ((SimpleFactor with multiplicity 1, coefficient), ...)

    @classmethod
    def from_dict(cls, p, base_exp, d: dict) -> "K0Class":
        items = sorted(((f, c) for f, c in d.values() if c), key=lambda fc: fc[0].key)
        return cls(p, base_exp, tuple(items))

    def as_dict(self):
        return {f.key: (f, c) for f, c in self.terms}

    def _combine(self, other: "K0Class", sign: int) -> "K0Class":
        if (self.p, self.base_exp) != (other.p, other.base_exp):
            raise InvalidParams("classes over different q")
        d = self.as_dict()
        for k, (f, c) in other.as_dict().items():
            old = d.get(k, (f, 0))[1]
            d[k] = (f, old + sign * c)
        return K0Class.from_dict(self.p, self.base_exp, d)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rmul__(self, n: int):
        return K0Class.from_dict(self.p, self.base_exp, {k: (f, n * c) for k, (f, c) in self.as_dict().items()})

    def __bool__(self):
        return bool(self.terms)

    def to_json(self):
        return [dict(f.to_json(), coefficient=c) for f, c in self.terms]


def _unit_factor(f: SimpleFactor) -> SimpleFactor:
    return SimpleFactor(f.point, f.poly, 1, f.endo_degree)


def k0_class(M: CartierModule) -> K0Class:
    """``sum multiplicity * [simple]``; nilpotent parts contribute nothing."""
    d = {}
    for f in simple_factors(M):
        u = _unit_factor(f)
        old = d.get(u.key, (u, 0))[1]
        d[u.key] = (u, old + f.multiplicity)
    return K0Class.from_dict(M.p, M.base_exp, d)


@dataclass(frozen=True)
class TraceFunction:
    """Map from the rational points to F_q (``None`` at non-rational points)."""

    field: FieldSpec
    values: tuple

    def __add__(self, other):
        return TraceFunction(self.field, tuple(_add(a, b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        return TraceFunction(self.field, tuple(_add(a, None if b is None else -b) for a, b in zip(self.values, other.values)))

    def __rmul__(self, n: int):
        return TraceFunction(self.field, tuple(None if a is None else a * n for a in self.values))

    def is_zero(self):
        return all(a is None or not a for a in self.values)

    def to_json(self):
        return [None if a is None else a.to_json() for a in self.values]


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def taelman_trace(M: CartierModule) -> TraceFunction:
    """Trace of ``C`` on the stalk at each F_q-rational point."""
    Fq = coefficient_field(M.p, M.base_exp)
    vals = []
    for b in M.blocks:
        if not b.reduced:
            raise InvalidParams("trace is defined on reduced points only")
        if not b.rational:
            vals.append(None)
            continue
        if b.dim == 0:
            vals.append(Fq.zero)
            continue
        B = b.k_matrix()
        vals.append(sum((B[i][i] for i in range(len(B))), Fq.zero))
    return TraceFunction(Fq, tuple(vals))


def trace_of_class(c: K0Class, X: PointSet) -> TraceFunction:
    """Trace read off a class: a simple with polynomial ``g`` at a rational
    point contributes the sum of the roots of ``g``.
    """
    Fq = coefficient_field(c.p, c.base_exp)
    vals = [Fq.zero if s == c.base_exp else None for s in X.degrees]
    for f, n in c.terms:
        if vals[f.point] is None:
            continue
        g = f.poly
        vals[f.point] = vals[f.point] + (-g[-2]) * n
    return TraceFunction(Fq, tuple(vals))


def verify_taelman_ses(X: PointSet, samples: int = 100, seed: int = 0) -> dict:
    """Surjectivity, delta values and the two kinds of relations, on samples."""
    rng = random.Random(seed)
    Fq = coefficient_field(X.p, X.base_exp)
    n = len(X)
    e = X.base_exp
    rows = []
    delta_ok = True
    for x in range(n):
        if X.degrees[x] != e:
            continue
        tr = taelman_trace(delta_crystal(X, x))
        expect = tuple((Fq.one if y == x else Fq.zero) if X.degrees[y] == e else None for y in range(n))
        delta_ok = delta_ok and tr.values == expect
        for c in Fq.elements()[1:]:
            tr = taelman_trace(delta_crystal(X, x, c))
            rows.append([d for v in tr.values if v is not None for d in v.coeffs])
    nrat = sum(1 for s in X.degrees if s == e)
    span = linalg.rank(np.array(rows, dtype=np.int64).reshape(len(rows), nrat * e), X.p) if rows else 0
    surjective = span == nrat * e
    rel_ok = 0
    pmul_ok = 0
    for _ in range(samples if n else 0):
        M = random_cartier(X, rng)
        c1, c2 = Fq.random_element(rng), Fq.random_element(rng)
        t = taelman_trace(M.scaled(c1)) + taelman_trace(M.scaled(c2)) - taelman_trace(M.scaled(c1 + c2))
        rel_ok += t.is_zero()
        Mp = M
        for _ in range(X.p - 1):
            Mp = Mp.direct_sum(M)
        pmul_ok += taelman_trace(Mp).is_zero()
    total = samples if n else 0
    return {
        "points": n,
        "rationalPoints": nrat,
        "traceImageRank": int(span),
        "targetRank": nrat * e,
        "surjective": surjective,
        "deltaIsIndicator": delta_ok,
        "relationsZero": rel_ok,
        "pMultiplesZero": pmul_ok,
        "samples": total,
        "ok": surjective and delta_ok and rel_ok == total and pmul_ok == total,
    }


# ---------------------------------------------------------------------------
# rank over the skew field D


@dataclass
class DPresentation:
    """``n`` generators and relation vectors (rows of length ``n``) over k[F]."""

    ring: FieldSpec
    n: int
    relations: list = field(default_factory=list)

    def __post_init__(self):
        for row in self.relations:
            if len(row) != self.n:
                raise InvalidParams("relation length differs from generator count")
            for h in row:
                if h.ring != self.ring:
                    raise InvalidParams("relation entries over a different ring")


def rank_over_D(rows, ring) -> int:
    """Right-D rank of row vectors: ``v_i <- v_i - v_1 * (v_1[j]^-1 v_i[j])``."""
    if not ring.is_perfect:
        raise NotPerfect(f"{ring} is not perfect; D does not exist")
    vecs = [[x if isinstance(x, SkewFraction) else SkewFraction(x) for x in row] for row in rows]
    vecs = [v for v in vecs if any(v)]
    rank = 0
    ncols = len(vecs[0]) if vecs else 0
    for j in range(ncols):
        piv = next((i for i, v in enumerate(vecs) if v[j]), None)
        if piv is None:
            continue
        pv = vecs.pop(piv)
        inv = pv[j].inverse()
        rank += 1
        new = []
        for v in vecs:
            if v[j]:
                f = inv * v[j]
                v = [a - b * f for a, b in zip(v, pv)]
            if any(v):
                new.append(v)
        vecs = new
    return rank


def qd_rank(P: DPresentation) -> int:
    """``n - rank_D(relations)``: the class of the presented module in K_0(QD)."""
    return P.n - rank_over_D(P.relations, P.ring)


def presentation_from_koszul(pres) -> DPresentation:
    """Relations are the columns of ``psi``."""
    n = pres.n
    rows = [[pres.psi[k][j] for k in range(n)] for j in range(n)]
    return DPresentation(pres.ring, n, rows)


def scramble(P: DPresentation, rng, steps: int = 4, max_degree: int = 1) -> DPresentation:
    """Elementary operations: right combinations of relations and left
    multiplications of coordinates by elements of k[F].
    """
    from .skew import random_skew

    K = P.ring
    rows = [list(r) for r in P.relations]
    for _ in range(steps):
        kind = rng.randrange(4)
        if kind == 0 and len(rows) >= 2:
            i, j = rng.sample(range(len(rows)), 2)
            h = random_skew(K, rng, max_degree)
            rows[i] = [a + b * h for a, b in zip(rows[i], rows[j])]
        elif kind == 1 and len(rows) >= 2:
            i, j = rng.sample(range(len(rows)), 2)
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == 2 and P.n >= 2:
            a, b = rng.sample(range(P.n), 2)
            g = random_skew(K, rng, max_degree)
            for r in rows:
                r[a] = r[a] + g * r[b]
        elif kind == 3 and rows:
            i = rng.randrange(len(rows))
            c = K.random_element(rng, nonzero=True)
            rows[i] = [x.scale_right(c) for x in rows[i]]
    return DPresentation(K, P.n, rows)


def k0_pushforward_defect(M: CartierModule) -> int:
    """``dim U(M) - dim F_* U(M)`` over F_p at a single point (always 0)."""
    if len(M.blocks) != 1:
        raise MultiplePoints(f"expected one point, got {len(M.blocks)}")
    b = M.blocks[0]
    if not b.reduced:
        raise InvalidParams("pushforward defect needs a reduced point")
    K = b.field
    U = FModule(K, b.dim, b.actions, b.C)
    pushed = twist(U)
    return U.dim - pushed.dim


# ---------------------------------------------------------------------------
# Chow groups of projective space


@dataclass
class ChowResult:
    kernel_dim: int
    cokernel_dim: int
    matrix: list


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and polyfp.is_prime(p)


def chow_frobenius_demo(n: int, q: int) -> ChowResult:
    """``1 - F_*`` on ``CH_*(P^n)_Q``: ``F_*`` is ``q^i`` on ``CH_i``."""
    if n < 0:
        raise InvalidParams("n must be non-negative")
    if not _is_prime_power(q):
        raise InvalidParams(f"q={q} is not a prime power")
    M = [[Fraction(1 - q**i) if i == j else Fraction(0) for j in range(n + 1)] for i in range(n + 1)]
    rk = linalg.rank_generic(M, Fraction(0))
    return ChowResult(n + 1 - rk, n + 1 - rk, M)
