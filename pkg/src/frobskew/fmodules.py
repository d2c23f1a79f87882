"""Right R[F]-modules over finite-dimensional base rings.

An :class:`FModule` is an F_p-space with matrices for the scalar generators
and for right multiplication by ``F`` (row vectors).  The compatibility
``(m r^q) F = (m F) r`` reads ``A_r^q @ C == C @ A_r``.

Ideal computations work in ``Z^{<=d}``, the F_p-space of skew polynomials of
degree at most ``d``, with coordinate ``i*s + j`` for the coefficient of
``w^j F^i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import ffpoly
from . import linalg
from .errors import BoundTooSmall, EmptyInput, InvalidParams, NotFiniteDimensional, NotFree
from .fields import GF, FieldSpec, QuotientRing
from .semilinear import KStructure, companion_action, semilinear_matrix
from .skew import SkewPoly, right_ideal_generator


@dataclass(frozen=True, eq=False)
class FModule:
    """Finite-dimensional right R[F]-module.

    ``ring`` is a finite field or a quotient ``F_p[x]/(f)``; ``actions`` lists
    the F_p matrices of the ring generators (``w`` resp. ``x``); ``C`` is the
    matrix of ``m -> m*F``.
    """

    ring: object
    dim: int
    actions: tuple
    C: np.ndarray

    def __post_init__(self):
        p = self.ring.p
        C = np.asarray(self.C, dtype=np.int64) % p
        object.__setattr__(self, "C", C.reshape(self.dim, self.dim))
        acts = tuple(np.asarray(A, dtype=np.int64).reshape(self.dim, self.dim) % p for A in self.actions)
        object.__setattr__(self, "actions", acts)

    @property
    def p(self):
        return self.ring.p

    @property
    def q(self):
        return self.ring.q

    @classmethod
    def standard(cls, K: FieldSpec, C):
        """Module ``k^n`` with the standard scalar action and F-matrix ``C``."""
        C = np.asarray(C, dtype=np.int64)
        n = C.shape[0] // K.r
        acts = (companion_action(K, n),) if K.r > 1 else ()
        return cls(K, C.shape[0], acts, C)

    @classmethod
    def from_k_matrix(cls, K: FieldSpec, B):
        """Module ``k^n`` with ``(v) F = sigma^{-1}(v) @ B``."""
        n = len(B)
        C = semilinear_matrix(K, B) if n else np.zeros((0, 0), dtype=np.int64)
        return cls.standard(K, C.reshape(n * K.r, n * K.r))

    def is_valid(self) -> bool:
        p, q = self.p, self.q
        return all(
            np.array_equal(linalg.matmul(linalg.matpow(A, q, p), self.C, p), linalg.matmul(self.C, A, p))
            for A in self.actions
        )

    def kstructure(self) -> KStructure:
        if not isinstance(self.ring, FieldSpec):
            raise NotFiniteDimensional("a finite field base is required here")
        return KStructure(self.ring, self.actions[0] if self.actions else None, self.dim)

    def k_matrix(self):
        """``B`` with ``(n_j) F = sum_k n_k B[j][k]`` in the recovered k-basis."""
        return self.kstructure().k_matrix(self.C)


def twist(M: FModule) -> FModule:
    """Same space and F-action; each scalar generator acts through its q-th power."""
    p, q = M.p, M.q
    return FModule(M.ring, M.dim, tuple(linalg.matpow(A, q, p) for A in M.actions), M.C)


@dataclass(frozen=True)
class FreeRFModule:
    """The free right R[F]-module ``M[X] = M (x)_R R[F]`` with ``X^i <-> F^i``."""

    ring: object
    rank: int

    def basis(self):
        one = SkewPoly.one(self.ring)
        zero = SkewPoly.zero(self.ring)
        return [[one if i == j else zero for j in range(self.rank)] for i in range(self.rank)]

    def act(self, vec, h: SkewPoly):
        """``(sum m_i X^i) * h``: right multiplication coordinate-wise."""
        return [c * h for c in vec]


def extend_MX(M: FModule) -> FreeRFModule:
    """``M[X]`` for a free module ``M``; raises NotFree otherwise."""
    R = M.ring
    if isinstance(R, FieldSpec):
        return FreeRFModule(R, M.kstructure().n)
    if isinstance(R, QuotientRing):
        p = R.p
        deg = R.dim
        if M.dim % deg:
            raise NotFree("dimension is not a multiple of the ring dimension")
        n = M.dim // deg
        A = M.actions[0]
        K = GF(p)
        for g, e in ffpoly.factor([K(c) for c in R.modulus]):
            gA = _poly_of_matrix([int(c.n) for c in g], A, p)
            for k in range(1, e + 1):
                expect = n * (deg - k * (len(g) - 1))
                if linalg.rank(linalg.matpow(gA, k, p), p) != expect:
                    raise NotFree(f"module is not free over {R}")
        return FreeRFModule(R, n)
    raise NotFiniteDimensional(f"unsupported base ring {R}")


def _poly_of_matrix(coeffs, A, p):
    n = A.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        acc = (linalg.matmul(acc, A, p) + c * linalg.identity(n)) % p
    return acc


# ---------------------------------------------------------------------------
# twisted Koszul presentation


@dataclass
class KoszulPresentation:
    """``0 -> N~[X] --psi--> N[X] --phi--> N -> 0`` for ``N = k^n``.

    ``psi[k][j] = F*delta_kj - B[j][k]`` is the k-th coordinate of the image
    of the j-th source generator; ``phi(e_k h) = n_k * h``.
    """

    module: FModule
    psi: list
    B: list
    checks: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.psi)

    @property
    def ring(self):
        return self.module.ring

    def phi_vector(self, vec) -> np.ndarray:
        """``phi`` of a vector of skew polynomials, as an F_p vector of N."""
        N = self.module
        ks = N.kstructure()
        out = np.zeros(N.dim, dtype=np.int64)
        for k, h in enumerate(vec):
            for i, c in h.coeffs.items():
                v = ks.from_k(ks.unit(k, c))
                v = (v @ linalg.matpow(N.C, i, N.p)) % N.p
                out = (out + v) % N.p
        return out

    def phi_psi_zero(self) -> bool:
        cols = [[self.psi[k][j] for k in range(self.n)] for j in range(self.n)]
        return all(not self.phi_vector(c).any() for c in cols)


def koszul_presentation(N: FModule) -> KoszulPresentation:
    if not isinstance(N.ring, FieldSpec):
        raise NotFiniteDimensional("Koszul presentation needs a finite field base")
    K = N.ring
    B = N.k_matrix()
    n = len(B)
    Fp = SkewPoly.F(K)
    psi = [[(Fp if j == k else SkewPoly.zero(K)) - SkewPoly.const(K, B[j][k]) for j in range(n)] for k in range(n)]
    pres = KoszulPresentation(N, psi, B)
    pres.checks["phi o psi == 0"] = pres.phi_psi_zero()
    if not pres.checks["phi o psi == 0"]:
        raise ArithmeticError("Koszul presentation failed phi o psi == 0")
    return pres


def _coords(h: SkewPoly, d: int, s: int):
    """F_p coordinates of ``h`` in ``Z^{<=d}``."""
    out = np.zeros((d + 1) * s, dtype=np.int64)
    for i, c in h.coeffs.items():
        if i > d:
            raise ValueError("degree exceeds truncation")
        out[i * s : (i + 1) * s] = c.coeffs
    return out


def _basis_elems(K: FieldSpec):
    return [K.from_index(K.p**a) if K.r > 1 else K.one for a in range(K.r)]


def check_exactness(pres: KoszulPresentation, degree_bound: int) -> dict:
    """Exactness of the truncated sequence, degree by degree.

    Degree ``d`` uses the source in X-degree ``<= d-1`` and the middle in
    X-degree ``<= d`` (``psi`` raises degree by one).
    """
    if degree_bound < 1:
        raise BoundTooSmall("degree bound must be at least 1")
    N = pres.module
    K = N.ring
    p, s, n = K.p, K.r, pres.n
    basis = _basis_elems(K)
    phi_rows = {}
    report = {"degrees": [], "exact": True, "firstFailure": None}
    prev_im = 0
    for d in range(1, degree_bound + 1):
        mid_rows = []
        for k in range(n):
            for i in range(d + 1):
                for b in basis:
                    key = (k, i, b.n)
                    if key not in phi_rows:
                        e = [SkewPoly.zero(K)] * n
                        e[k] = SkewPoly(K, {i: b})
                        phi_rows[key] = pres.phi_vector(e)
                    mid_rows.append(phi_rows[key])
        # middle coordinates: block k, then degree i, then w^a
        psi_rows = []
        for j in range(n):
            for i in range(d):
                for b in basis:
                    h = SkewPoly(K, {i: b})
                    img = [pres.psi[k][j] * h for k in range(n)]
                    psi_rows.append(np.concatenate([_coords(x, d, s) for x in img]))
        Phi = np.array(mid_rows, dtype=np.int64).reshape(len(mid_rows), N.dim)
        Psi = np.array(psi_rows, dtype=np.int64).reshape(len(psi_rows), n * (d + 1) * s)
        rk_psi = linalg.rank(Psi, p)
        rk_phi = linalg.rank(Phi, p)
        composes = not linalg.matmul(Psi, Phi, p).any() if Psi.size else True
        ker_phi = Phi.shape[0] - rk_phi
        row = {
            "degree": d,
            "psiInjective": rk_psi == Psi.shape[0],
            "phiSurjective": rk_phi == N.dim,
            "composesToZero": bool(composes),
            "kerPhiDim": int(ker_phi),
            "imPsiDim": int(rk_psi),
            "imPsiNew": int(rk_psi - prev_im),
        }
        row["exact"] = all((row["psiInjective"], row["phiSurjective"], row["composesToZero"], ker_phi == rk_psi))
        prev_im = rk_psi
        report["degrees"].append(row)
        if not row["exact"] and report["exact"]:
            report["exact"] = False
            report["firstFailure"] = d
    return report


# ---------------------------------------------------------------------------
# degree filtration of right ideals


def _require_finite_field(gens):
    if not gens:
        raise EmptyInput("no generators")
    K = gens[0].ring
    if not isinstance(K, FieldSpec):
        raise InvalidParams("ideal filtrations need a finite field base")
    return K


def _span_rows(gens, D, K):
    s = K.r
    basis = _basis_elems(K)
    rows = []
    for g in gens:
        if not g or g.degree > D:
            continue
        for j in range(D - g.degree + 1):
            for b in basis:
                rows.append(_coords(g * SkewPoly(K, {j: b}), D, s))
    return np.array(rows, dtype=np.int64).reshape(len(rows), (D + 1) * s)


def _low_part(rows, D, d, s, p):
    """Basis of ``span(rows) ∩ Z^{<=d}`` inside ``Z^{<=D}``."""
    ncols = (D + 1) * s
    if rows.shape[0] == 0:
        return np.zeros((0, (d + 1) * s), dtype=np.int64)
    rev = rows[:, ::-1]
    R, piv = linalg.rref(rev, p)
    cut = ncols - (d + 1) * s
    keep = [i for i, c in enumerate(piv) if c >= cut]
    low = R[keep][:, ::-1]
    return low[:, : (d + 1) * s] % p


def filtration_basis(gens, d: int) -> np.ndarray:
    """F_p basis (rows, coordinates in ``Z^{<=d}``) of ``I ∩ Z^{<=d}``.

    ``I^{<=d}`` is cut out of the span of ``g * w^a F^j`` up to degree
    ``d + sum(deg g)``, which already contains every element of ``I`` of
    degree ``<= d`` (Bezout cofactors are bounded by the generator degrees).
    """
    K = _require_finite_field(gens)
    gens = [g for g in gens if g]
    s = K.r
    if d < 0 or not gens:
        return np.zeros((0, max(d + 1, 0) * s), dtype=np.int64)
    D = d + sum(g.degree for g in gens)
    return _low_part(_span_rows(gens, D, K), D, d, s, K.p)


def vector_to_skew(v, K: FieldSpec) -> SkewPoly:
    s = K.r
    v = [int(c) for c in v]
    return SkewPoly(K, {i: K(v[i * s : (i + 1) * s]) for i in range(len(v) // s)})


@dataclass
class FilteredIdeal:
    """The right ideal ``I = sum g_i k[F]`` with its degree filtration."""

    gens: list

    def __post_init__(self):
        self.gens = list(self.gens)
        self.K = _require_finite_field(self.gens)
        self._cache = {}

    @property
    def s(self):
        return self.K.r

    def basis(self, d: int) -> np.ndarray:
        if d not in self._cache:
            self._cache[d] = filtration_basis(self.gens, d)
        return self._cache[d]

    def dim(self, d: int) -> int:
        return int(self.basis(d).shape[0]) if d >= 0 else 0

    def basis_elements(self, d: int):
        return [vector_to_skew(v, self.K) for v in self.basis(d)]

    @cached_property
    def times_F(self) -> "FilteredIdeal":
        return FilteredIdeal([g.shift(1) for g in self.gens])

    @cached_property
    def max_degree(self) -> int:
        return max((g.degree for g in self.gens if g), default=0)

    def image_dim(self, d: int) -> int:
        """``dim`` of the image of ``I^{<=d}`` in ``I / IF``."""
        return self.dim(d) - self.times_F.dim(d)

    @cached_property
    def d0(self) -> int:
        if not any(self.gens):
            raise EmptyInput("the zero ideal has no reduction degree")
        full = self.image_dim(self.max_degree)
        return next(d for d in range(self.max_degree + 1) if self.image_dim(d) == full)


def ideal_filtration(I: FilteredIdeal | list, d: int) -> list:
    """Basis of ``I^{<=d}`` as skew polynomials."""
    if not isinstance(I, FilteredIdeal):
        I = FilteredIdeal(I)
    return I.basis_elements(d)


def shift_rows(rows, s):
    """Coordinates of ``alpha * F`` from those of ``alpha``."""
    return np.concatenate([np.zeros((rows.shape[0], s), dtype=np.int64), rows], axis=1)


def reduction_identity_holds(I: FilteredIdeal, d: int) -> bool:
    """``IF ∩ I^{<=d} == I^{<=d-1} F``, checked by dimension and containment."""
    s, p = I.s, I.K.p
    lhs = I.times_F.basis(d)
    rhs = shift_rows(I.basis(d - 1), s) if d >= 1 else np.zeros((0, (d + 1) * s), dtype=np.int64)
    if lhs.shape[0] != rhs.shape[0]:
        return False
    return all(linalg.in_span(lhs, v, p) for v in rhs) if rhs.shape[0] else True


def reduce_element(I: FilteredIdeal, alpha: SkewPoly):
    """Write ``alpha ∈ I`` as ``sum_j gamma_j F^j`` with ``gamma_j ∈ I^{<=d0}``.

    Each step solves ``alpha = gamma + alpha_hat * F`` with ``gamma ∈ I^{<=d0}``
    and ``alpha_hat ∈ I^{<=d-1}``.
    """
    K, s, p, d0 = I.K, I.s, I.K.p, I.d0
    steps = []
    gammas = []
    cur = alpha
    while cur and cur.degree > d0:
        d = cur.degree
        low = I.basis(d0)
        low = np.concatenate([low, np.zeros((low.shape[0], (d - d0) * s), dtype=np.int64)], axis=1)
        hi = shift_rows(I.basis(d - 1), s)
        A = np.vstack([low, hi])
        x = linalg.solve_left(A, _coords(cur, d, s), p)
        if x is None:
            raise ArithmeticError(f"{cur} is not in I^<={d0} + I^<={d - 1} F")
        gamma = vector_to_skew(linalg.matmul(x[: low.shape[0]].reshape(1, -1), low, p)[0], K)
        hat_v = linalg.matmul(x[low.shape[0] :].reshape(1, -1), I.basis(d - 1), p)[0]
        alpha_hat = vector_to_skew(hat_v, K)
        if gamma + alpha_hat.shift(1) != cur:
            raise ArithmeticError("reduction step failed")
        steps.append({"degree": d, "gamma": gamma, "alphaHat": alpha_hat})
        gammas.append(gamma)
        cur = alpha_hat
    gammas.append(cur)
    total = SkewPoly.zero(K)
    for j, g in enumerate(gammas):
        total = total + g.shift(j)
    return gammas, steps, total == alpha


@dataclass
class EmertonResult:
    d0: int
    reduced_gens: list
    certificate: dict


def emerton_reduce(gens) -> EmertonResult:
    """Least ``d0`` with ``I^{<=d0}`` onto ``I/IF``, plus a reduction certificate."""
    gens = list(gens)
    if not gens or not any(gens):
        raise EmptyInput("need at least one nonzero generator")
    I = FilteredIdeal(gens)
    d0 = I.d0
    chains = []
    ok = True
    for g in gens:
        if not g:
            continue
        gammas, steps, good = reduce_element(I, g)
        ok = ok and good
        chains.append({"generator": g, "steps": steps, "gammas": gammas, "verified": good})
    generator = right_ideal_generator(gens)
    cert = {
        "chains": chains,
        "allGeneratorsReduced": ok,
        "generator": generator,
        "generatorDegree": generator.degree,
        "matchesGenerator": generator.degree == d0,
        "imageDims": [I.image_dim(d) for d in range(I.max_degree + 1)],
    }
    return EmertonResult(d0, I.basis_elements(d0), cert)


def cokernel_F_dim(gens, dbound: int) -> dict:
    """``dim I^{<=d} / I^{<=d-1} F`` for ``d = 0..dbound`` and the stable value."""
    gens = list(gens)
    if not gens or not any(gens):
        dims = [0] * (dbound + 1)
        return {"dims": dims, "stable": 0, "stableFrom": 0}
    I = FilteredIdeal(gens)
    dims = [I.dim(d) - I.dim(d - 1) for d in range(dbound + 1)]
    stable = dims[-1] if dims else 0
    start = len(dims) - 1
    while start > 0 and dims[start - 1] == stable:
        start -= 1
    return {"dims": dims, "stable": stable, "stableFrom": start, "filtrationDims": [I.dim(d) for d in range(dbound + 1)]}


def random_fmodule(K: FieldSpec, n: int, rng) -> FModule:
    B = [[K.random_element(rng) for _ in range(n)] for _ in range(n)]
    return FModule.from_k_matrix(K, B)


__all__ = [
    "EmertonResult",
    "FModule",
    "FilteredIdeal",
    "FreeRFModule",
    "KoszulPresentation",
    "check_exactness",
    "cokernel_F_dim",
    "emerton_reduce",
    "extend_MX",
    "filtration_basis",
    "ideal_filtration",
    "koszul_presentation",
    "random_fmodule",
    "reduce_element",
    "reduction_identity_holds",
    "twist",
]
