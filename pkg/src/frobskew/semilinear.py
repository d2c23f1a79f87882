"""F_p-level descriptions of modules over a finite field k = F_{p^s}.

A module is stored as an F_p-space with the matrix ``A`` of multiplication by
the field generator ``w`` (row vectors, ``v -> v @ A``).  :class:`KStructure`
recovers a k-basis from ``A`` so that semilinear operators can be written as
k-matrices: ``C(v) = sigma^{-1}(v) @ B`` with ``sigma`` the q-power map.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import InvalidParams
from .fields import FieldSpec


def elem_digits(a) -> list[int]:
    return list(a.coeffs)


def companion_action(K: FieldSpec, n: int):
    """Multiplication by ``w`` on ``k^n`` in the standard F_p coordinates.

    Coordinate ``i*s + j`` is the coefficient of ``w^j`` in the ``i``-th entry.
    """
    s = K.r
    one_block = np.zeros((s, s), dtype=np.int64)
    w = K.gen if s > 1 else K.one
    for j in range(s):
        basis = K.from_index(K.p**j) if s > 1 else K.one
        one_block[j] = elem_digits(basis * w)
    return np.kron(np.eye(n, dtype=np.int64), one_block) % K.p


def scalar_action(K: FieldSpec, n: int, c):
    s = K.r
    block = np.zeros((s, s), dtype=np.int64)
    for j in range(s):
        block[j] = elem_digits(K.from_index(K.p**j) * c)
    return np.kron(np.eye(n, dtype=np.int64), block) % K.p


def to_fp(vec, K: FieldSpec):
    out = []
    for a in vec:
        out.extend(elem_digits(a))
    return np.array(out, dtype=np.int64).reshape(-1)


def from_fp(v, K: FieldSpec):
    s = K.r
    v = [int(c) % K.p for c in v]
    return [K(v[i * s : (i + 1) * s]) for i in range(len(v) // s)]


def semilinear_matrix(K: FieldSpec, B, inverse_frobenius: bool = True):
    """F_p matrix of ``v -> sigma^{-1}(v) @ B`` (or ``v @ B`` when not twisting)."""
    n = len(B)
    s = K.r
    rows = []
    for i in range(n):
        for j in range(s):
            e = [K.zero] * n
            e[i] = K.from_index(K.p**j) if s > 1 else K.one
            if inverse_frobenius:
                e = [K.qth_root(x) for x in e]
            img = [K.zero] * len(B[0])
            for k in range(n):
                if e[k]:
                    img = [acc + e[k] * b for acc, b in zip(img, B[k])]
            rows.append(to_fp(img, K))
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def k_matmul(X, Y, K):
    if not X:
        return []
    m = len(Y[0]) if Y else 0
    return [[sum((X[i][k] * Y[k][j] for k in range(len(Y))), K.zero) for j in range(m)] for i in range(len(X))]


def k_frob(X, K, times=1):
    return [[K.frobenius(a, times) for a in row] for row in X]


class KStructure:
    """A k-basis for an F_p-space on which ``w`` acts by the matrix ``A``.

    ``A`` must satisfy the minimal polynomial of ``w`` (it does for the
    standard action, its Frobenius twists and restrictions to submodules).
    """

    def __init__(self, K: FieldSpec, A, dim: int):
        self.K = K
        self.p = K.p
        self.s = K.r
        self.dim = dim
        if dim % self.s:
            raise InvalidParams(f"F_p-dimension {dim} is not a multiple of [k:F_p]={self.s}")
        self.n = dim // self.s
        if self.s == 1 or dim == 0:
            self.P = linalg.identity(dim)
        else:
            A = np.asarray(A, dtype=np.int64) % self.p
            rows = []
            for e in range(dim):
                cur = np.array(rows, dtype=np.int64).reshape(-1, dim)
                v = np.zeros(dim, dtype=np.int64)
                v[e] = 1
                if cur.shape[0] and linalg.in_span(cur, v, self.p):
                    continue
                x = v
                for _ in range(self.s):
                    rows.append(x)
                    x = (x @ A) % self.p
                if len(rows) == dim:
                    break
            self.P = np.array(rows, dtype=np.int64)
            if linalg.rank(self.P, self.p) != dim:
                raise InvalidParams("scalar action is not a k-vector-space structure")
        self.Pinv = linalg.inverse(self.P, self.p) if dim else self.P

    def to_k(self, v):
        """k-coordinates of an F_p vector."""
        c = (np.asarray(v, dtype=np.int64) @ self.Pinv) % self.p if self.dim else []
        return from_fp(c, self.K)

    def from_k(self, vec):
        if not self.dim:
            return np.zeros(0, dtype=np.int64)
        return (to_fp(vec, self.K) @ self.P) % self.p

    def unit(self, i, c=None):
        e = [self.K.zero] * self.n
        e[i] = self.K.one if c is None else c
        return e

    def k_matrix(self, M):
        """k-matrix of an F_p operator: ``B[i] = image of the i-th k-basis vector``.

        For a ``sigma^{-1}``-semilinear operator this is the ``B`` with
        ``M(v) = sigma^{-1}(v) @ B``; for a k-linear one, ``M(v) = v @ B``.
        """
        return [self.to_k((self.from_k(self.unit(i)) @ M) % self.p) for i in range(self.n)]
