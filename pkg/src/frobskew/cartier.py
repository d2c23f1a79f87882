"""Cartier modules over finite point sets.

A :class:`CartierModule` is a tuple of blocks, one per point.  A block is an
F_p-space carrying the scalars of its point (``F_{p^s}``, or a fat point
``F_p[x]/(x^e)``) and the Cartier operator ``C`` as a matrix acting on row
vectors.  Semilinearity ``C(r^q m) = r C(m)`` reads ``A_r^q @ C == C @ A_r``.

Simple crystals are classified per block through ``L = C^m`` (``m`` the
degree of the point over F_q), which is k-linear; its characteristic
polynomial has coefficients in F_q and its irreducible factors other than
``y`` are the simple constituents.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import ffpoly
from . import linalg
from .errors import InvalidParams, PointNotRational
from .fields import GF, FieldSpec, restrict
from .semilinear import KStructure, companion_action, scalar_action, semilinear_matrix


@dataclass(frozen=True, eq=False)
class Block:
    """Stalk at one point.

    ``scalar_degree`` is ``s`` with residue field ``F_{p^s}``; ``nil_exp > 1``
    marks the fat point ``F_p[x]/(x^nil_exp)`` (only for ``s = 1``).
    ``actions`` are the F_p matrices of the scalar generators.
    """

    p: int
    base_exp: int
    scalar_degree: int
    dim: int
    C: np.ndarray
    actions: tuple = ()
    nil_exp: int = 1

    def __post_init__(self):
        p = self.p
        if self.scalar_degree % self.base_exp:
            raise InvalidParams(f"scalar degree {self.scalar_degree} is not a multiple of baseExp {self.base_exp}")
        if self.nil_exp > 1 and (self.scalar_degree != 1 or self.base_exp != 1):
            raise InvalidParams("fat points are supported only over F_p with q = p")
        C = np.asarray(self.C, dtype=np.int64).reshape(self.dim, self.dim) % p
        object.__setattr__(self, "C", C)
        acts = tuple(np.asarray(A, dtype=np.int64).reshape(self.dim, self.dim) % p for A in self.actions)
        object.__setattr__(self, "actions", acts)

    @classmethod
    def standard(cls, p, base_exp, scalar_degree, C, nil_exp=1):
        C = np.asarray(C, dtype=np.int64)
        dim = C.shape[0] if C.size else 0
        if nil_exp > 1:
            if dim % nil_exp:
                raise InvalidParams("dim must be a multiple of nilExp")
            N = np.diag(np.ones(nil_exp - 1, dtype=np.int64), 1)
            acts = (np.kron(np.eye(dim // nil_exp, dtype=np.int64), N),)
        elif scalar_degree > 1:
            if dim % scalar_degree:
                raise InvalidParams("dim must be a multiple of scalarDegree")
            acts = (companion_action(GF(p, scalar_degree, base_exp), dim // scalar_degree),)
        else:
            acts = ()
        return cls(p, base_exp, scalar_degree, dim, C, acts, nil_exp)

    @classmethod
    def from_k_matrix(cls, K: FieldSpec, B):
        n = len(B)
        C = semilinear_matrix(K, B) if n else np.zeros((0, 0), dtype=np.int64)
        return cls.standard(K.p, K.base_exp, K.r, C.reshape(n * K.r, n * K.r))

    @property
    def q(self):
        return self.p**self.base_exp

    @property
    def reduced(self) -> bool:
        return self.nil_exp == 1

    @property
    def rational(self) -> bool:
        return self.reduced and self.scalar_degree == self.base_exp

    @property
    def field(self) -> FieldSpec:
        if not self.reduced:
            raise InvalidParams("fat point has no residue-field structure on the whole stalk")
        return GF(self.p, self.scalar_degree, self.base_exp)

    def kstructure(self) -> KStructure:
        return KStructure(self.field, self.actions[0] if self.actions else None, self.dim)

    def k_matrix(self):
        return self.kstructure().k_matrix(self.C)

    def with_C(self, C) -> "Block":
        return Block(self.p, self.base_exp, self.scalar_degree, self.dim, C, self.actions, self.nil_exp)

    def to_json(self) -> dict:
        d = {"scalarDegree": self.scalar_degree, "dim": self.dim, "C": self.C.tolist()}
        if self.nil_exp > 1:
            d["nilExp"] = self.nil_exp
        std = Block.standard(self.p, self.base_exp, self.scalar_degree, np.zeros((self.dim, self.dim)), self.nil_exp)
        if any(not np.array_equal(a, b) for a, b in zip(self.actions, std.actions)):
            d["actions"] = [A.tolist() for A in self.actions]
        return d


@dataclass(frozen=True, eq=False)
class CartierModule:
    p: int
    base_exp: int
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for b in self.blocks:
            if b.p != self.p or b.base_exp != self.base_exp:
                raise InvalidParams("block characteristic or q differs from the module's")

    @property
    def q(self):
        return self.p**self.base_exp

    @property
    def dim(self):
        return sum(b.dim for b in self.blocks)

    @classmethod
    def from_json(cls, d: dict) -> "CartierModule":
        p = int(d["p"])
        e = int(d.get("baseExp", 1))
        blocks = []
        for bd in d.get("blocks", []):
            dim = int(bd["dim"])
            C = np.array(bd.get("C", []), dtype=np.int64).reshape(dim, dim)
            s = int(bd.get("scalarDegree", e))
            nil = int(bd.get("nilExp", 1))
            blk = Block.standard(p, e, s, C, nil)
            if "actions" in bd:
                blk = Block(p, e, s, dim, C, tuple(np.array(A) for A in bd["actions"]), nil)
            blocks.append(blk)
        return cls(p, e, tuple(blocks))

    def to_json(self) -> dict:
        return {"p": self.p, "baseExp": self.base_exp, "blocks": [b.to_json() for b in self.blocks]}

    def direct_sum(self, other: "CartierModule") -> "CartierModule":
        if (other.p, other.base_exp, len(other.blocks)) != (self.p, self.base_exp, len(self.blocks)):
            raise InvalidParams("direct sum needs the same point set")
        return CartierModule(self.p, self.base_exp, tuple(_block_sum(a, b) for a, b in zip(self.blocks, other.blocks)))

    def scaled(self, c) -> "CartierModule":
        """Replace ``C`` by ``c*C`` for ``c`` in F_q (still semilinear)."""
        out = []
        for b in self.blocks:
            if b.reduced:
                K = b.field
                cc = restrict_or_embed(c, K)
                S = scalar_action(K, b.dim // K.r, cc)
                out.append(b.with_C(linalg.matmul(b.C, S, b.p)))
            else:
                out.append(b.with_C((b.C * int(c.n)) % b.p))
        return CartierModule(self.p, self.base_exp, tuple(out))


def restrict_or_embed(c, K: FieldSpec):
    from .fields import embed

    return embed(c, K) if c.field != K else c


def _block_sum(a: Block, b: Block) -> Block:
    if (a.scalar_degree, a.nil_exp) != (b.scalar_degree, b.nil_exp):
        raise InvalidParams("blocks over different points")
    dim = a.dim + b.dim
    C = np.zeros((dim, dim), dtype=np.int64)
    C[: a.dim, : a.dim] = a.C
    C[a.dim :, a.dim :] = b.C
    acts = []
    for A1, A2 in zip(a.actions, b.actions):
        A = np.zeros((dim, dim), dtype=np.int64)
        A[: a.dim, : a.dim] = A1
        A[a.dim :, a.dim :] = A2
        acts.append(A)
    if a.dim == 0:
        acts = list(b.actions)
    elif b.dim == 0:
        acts = list(a.actions)
    return Block(a.p, a.base_exp, a.scalar_degree, dim, C, tuple(acts), a.nil_exp)


# ---------------------------------------------------------------------------
# validation and nilpotence


def validate_cartier(M: CartierModule) -> dict:
    """First ``(block, generator, basis vector)`` violating ``C(r^q m) = r C(m)``."""
    for bi, b in enumerate(M.blocks):
        for gi, A in enumerate(b.actions):
            lhs = linalg.matmul(linalg.matpow(A, b.q, b.p), b.C, b.p)
            rhs = linalg.matmul(b.C, A, b.p)
            bad = np.nonzero((lhs != rhs).any(axis=1))[0]
            if bad.size:
                return {"ok": False, "violation": {"block": bi, "generator": gi, "basisIndex": int(bad[0])}}
    return {"ok": True, "violation": None}


def _image_chain(b: Block):
    """Dimensions of ``C^e M`` until stable, and the stable image basis."""
    p = b.p
    cur = linalg.identity(b.dim)
    dims = [b.dim]
    while True:
        nxt = linalg.row_space(linalg.matmul(cur, b.C, p), p) if cur.shape[0] else cur
        if nxt.shape[0] == cur.shape[0]:
            return dims, cur
        dims.append(int(nxt.shape[0]))
        cur = nxt


@dataclass
class NilpotenceResult:
    nilpotent: bool
    v: int
    stable_dim: int
    chain: list = field(default_factory=list)


def is_nilpotent(M: CartierModule) -> NilpotenceResult:
    """Image chain ``M ⊇ CM ⊇ C^2 M ⊇ ...``.

    ``v`` is the least exponent with ``C^v M = 0`` when nilpotent, otherwise
    the step at which the chain stabilizes.
    """
    chains = [_image_chain(b)[0] for b in M.blocks]
    length = max((len(c) for c in chains), default=1)
    total = [sum(c[min(i, len(c) - 1)] for c in chains) for i in range(length)]
    stable = total[-1]
    return NilpotenceResult(stable == 0, length - 1, stable, total)


def brute_force_nilpotent(M: CartierModule) -> bool:
    return all(not linalg.matpow(b.C, b.dim, b.p).any() for b in M.blocks if b.dim)


# ---------------------------------------------------------------------------
# crystal representative


def _restrict(b: Block, V) -> Block:
    """Restriction of the block to the invariant subspace with basis rows ``V``."""
    p = b.p
    r = V.shape[0]

    def induced(M):
        img = linalg.matmul(V, M, p)
        X = np.zeros((r, r), dtype=np.int64)
        for i in range(r):
            x = linalg.solve_left(V, img[i], p)
            if x is None:
                raise ArithmeticError("subspace is not invariant")
            X[i] = x
        return X

    return Block(p, b.base_exp, b.scalar_degree, r, induced(b.C), tuple(induced(A) for A in b.actions), b.nil_exp)


def _k_adapted(b: Block, V):
    """Basis of the k-subspace spanned by ``V`` in the form ``v_i w^j``."""
    if not b.reduced or b.scalar_degree == 1 or V.shape[0] == 0:
        return V
    A = b.actions[0]
    p = b.p
    rows = []
    for v in V:
        cur = np.array(rows, dtype=np.int64).reshape(-1, b.dim)
        if cur.shape[0] and linalg.in_span(cur, v, p):
            continue
        x = v
        for _ in range(b.scalar_degree):
            rows.append(x)
            x = (x @ A) % p
    return np.array(rows, dtype=np.int64)


def minimal_cartier_submodule(M: CartierModule) -> CartierModule:
    """``C^e M`` for the least ``e`` with ``C^e M = C^{e+1} M``, blockwise."""
    out = []
    for b in M.blocks:
        _, V = _image_chain(b)
        out.append(_restrict(b, _k_adapted(b, V)))
    return CartierModule(M.p, M.base_exp, tuple(out))


def is_bijective(M: CartierModule) -> bool:
    return all(linalg.det(b.C, b.p) != 0 for b in M.blocks if b.dim)


# ---------------------------------------------------------------------------
# simple constituents


@dataclass(frozen=True)
class SimpleFactor:
    """Simple crystal at ``point``: ``C^m`` acts with irreducible char. poly ``poly``
    (monic over F_q, coefficients low to high, stored as field elements).
    """

    point: int
    poly: tuple
    multiplicity: int
    endo_degree: int

    @property
    def key(self):
        return (self.point, len(self.poly), tuple(c.n for c in reversed(self.poly)))

    @property
    def degree(self):
        return len(self.poly) - 1

    def poly_str(self, var="y"):
        return ffpoly.to_str(list(self.poly), var)

    def to_json(self):
        return {
            "point": self.point,
            "poly": [c.to_json() for c in self.poly],
            "polyStr": self.poly_str(),
            "multiplicity": self.multiplicity,
            "endoFieldDegree": self.endo_degree,
        }


def coefficient_field(p: int, base_exp: int) -> FieldSpec:
    """F_q, the field the classifying polynomials live over."""
    return GF(p, base_exp, base_exp)


def block_charpoly(b: Block):
    """Characteristic polynomial over F_q of ``C^m`` on a reduced block."""
    K = b.field
    m = b.scalar_degree // b.base_exp
    L = linalg.matpow(b.C, m, b.p)
    ks = b.kstructure()
    Lk = ks.k_matrix(L)
    cp = linalg.charpoly_generic(Lk, K.zero, K.one)
    Fq = coefficient_field(b.p, b.base_exp)
    return [restrict(c, Fq) if K != Fq else c for c in cp]


def simple_factors(M: CartierModule) -> list:
    """Canonically sorted simple constituents (nilpotent part dropped)."""
    out = []
    for x, b in enumerate(M.blocks):
        if not b.reduced:
            raise InvalidParams(f"point {x} is not reduced; simple factors need reduced points")
        if b.dim == 0:
            continue
        cp = block_charpoly(b)
        for g, e in ffpoly.factor(cp):
            if len(g) == 2 and not g[0]:
                continue  # the variable itself: nilpotent part
            out.append(SimpleFactor(x, tuple(g), e, b.base_exp * (len(g) - 1)))
    out.sort(key=lambda f: f.key)
    return out


def commutant(b: Block) -> np.ndarray:
    """F_p basis (as flattened matrices) of ``{X : A X = X A, C X = X C}``."""
    p, n = b.p, b.dim
    eye = np.eye(n, dtype=np.int64)
    eqs = []
    for A in (b.C,) + tuple(b.actions):
        # vec(A X - X A) with row-major vec: (A kron I - I kron A^T) vec(X)
        eqs.append(np.kron(A, eye) - np.kron(eye, A.T))
    return linalg.nullspace(np.vstack(eqs) % p, p)


def endomorphism_field_check(b: Block) -> dict:
    """Exhaustive Wedderburn check that the commutant is a finite field."""
    p, n = b.p, b.dim
    basis = commutant(b)
    r = basis.shape[0]
    elems = []
    for coeffs in itertools.product(range(p), repeat=r):
        X = (np.array(coeffs, dtype=np.int64) @ basis) % p if r else np.zeros(n * n, dtype=np.int64)
        elems.append(X.reshape(n, n))
    commutative = all(
        np.array_equal(linalg.matmul(X, Y, p), linalg.matmul(Y, X, p)) for X in elems for Y in elems
    )
    no_zero_divisors = all(linalg.det(X, p) != 0 for X in elems if X.any())
    return {"dim": r, "size": p**r, "commutative": commutative, "division": no_zero_divisors, "isField": commutative and no_zero_divisors}


# ---------------------------------------------------------------------------
# point sets and skyscrapers


@dataclass(frozen=True)
class PointSet:
    """Finite set of closed points over F_q; ``degrees[i]`` is ``[k(x_i) : F_p]``."""

    p: int
    base_exp: int
    degrees: tuple

    @classmethod
    def rational(cls, p: int, count: int, base_exp: int = 1) -> "PointSet":
        return cls(p, base_exp, tuple([base_exp] * count))

    def __len__(self):
        return len(self.degrees)

    def zero_module(self) -> CartierModule:
        blocks = tuple(Block.standard(self.p, self.base_exp, s, np.zeros((0, 0))) for s in self.degrees)
        return CartierModule(self.p, self.base_exp, blocks)


def delta_crystal(X: PointSet, x: int, c=None) -> CartierModule:
    """Skyscraper ``k(x)`` at a rational point with ``C = c`` (default 1)."""
    if not 0 <= x < len(X):
        raise InvalidParams(f"no point {x}")
    if X.degrees[x] != X.base_exp:
        raise PointNotRational(f"point {x} has residue degree {X.degrees[x]} over F_p, q = {X.p}^{X.base_exp}")
    K = GF(X.p, X.base_exp, X.base_exp)
    c = K.one if c is None else K(c)
    blocks = []
    for i, s in enumerate(X.degrees):
        if i == x:
            blocks.append(Block.from_k_matrix(K, [[c]]))
        else:
            blocks.append(Block.standard(X.p, X.base_exp, s, np.zeros((0, 0))))
    return CartierModule(X.p, X.base_exp, tuple(blocks))


def random_block(K: FieldSpec, n: int, rng, nilpotent_part: bool = False) -> Block:
    """Random block ``k^n`` with ``C(v) = sigma^{-1}(v) B``."""
    B = [[K.random_element(rng) for _ in range(n)] for _ in range(n)]
    if nilpotent_part:
        B = [[B[i][j] if j > i else K.zero for j in range(n)] for i in range(n)]
    return Block.from_k_matrix(K, B)


def random_cartier(X: PointSet, rng, max_n: int = 2) -> CartierModule:
    blocks = []
    for s in X.degrees:
        K = GF(X.p, s, X.base_exp)
        blocks.append(random_block(K, rng.randint(0, max_n), rng))
    return CartierModule(X.p, X.base_exp, tuple(blocks))
