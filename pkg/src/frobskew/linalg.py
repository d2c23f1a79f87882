"""Exact linear algebra.

Two families live here:

* F_p routines on int64 numpy arrays (row-vector convention: a matrix acts
  on the right of row vectors, so ``row_space`` is the natural span).  Row
  reduction goes through the kernel backend.
* Generic routines over any exact field whose elements support ``+ - * /``
  and ``bool`` (finite-field elements, rational functions, ``Fraction``).
"""

from __future__ import annotations

import numpy as np

from .kernels import rref_modp


def as_matrix(M, p, ncols=None):
    A = np.array(M, dtype=np.int64)
    if A.size == 0:
        A = A.reshape(0, ncols if ncols is not None else (A.shape[1] if A.ndim == 2 else 0))
    return A % p


def identity(n):
    return np.eye(n, dtype=np.int64)


def zeros(r, c):
    return np.zeros((r, c), dtype=np.int64)


def matmul(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def matpow(A, e, p):
    A = np.asarray(A, dtype=np.int64) % p
    result = identity(A.shape[0])
    while e:
        if e & 1:
            result = matmul(result, A, p)
        e >>= 1
        if e:
            A = matmul(A, A, p)
    return result


def rref(M, p):
    A = np.asarray(M, dtype=np.int64)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A.copy() % p, []
    return rref_modp(A, p)


def rank(M, p) -> int:
    return len(rref(M, p)[1])


def row_space(M, p):
    """Basis (as rows, in reduced echelon form) of the row space."""
    R, piv = rref(M, p)
    return R[: len(piv)]


def nullspace(M, p):
    """Basis of ``{x : M @ x = 0}`` as rows of the returned array."""
    A = np.asarray(M, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, piv = rref(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    basis = zeros(len(free), n)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-R[i, j]) % p
    return basis


def left_nullspace(M, p):
    """Basis of ``{y : y @ M = 0}``."""
    return nullspace(np.asarray(M, dtype=np.int64).T, p)


def solve_left(A, b, p):
    """Some ``x`` with ``x @ A = b``, or ``None`` if ``b`` is not in the row space."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    m = A.shape[0]
    if m == 0:
        return np.zeros(0, dtype=np.int64) if not b.any() else None
    # [A^T | b] as a system A^T x = b.
    aug = np.concatenate([A.T, b.reshape(-1, 1)], axis=1)
    R, piv = rref(aug, p)
    if m in piv:
        return None
    x = np.zeros(m, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, m]
    return x


def in_span(rows, v, p) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.shape[0] == 0:
        return not (np.asarray(v) % p).any()
    return rank(np.vstack([rows, np.asarray(v).reshape(1, -1)]), p) == rank(rows, p)


def intersect(U, V, p):
    """Row-space intersection of two matrices with equal column count."""
    U = np.asarray(U, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    n = U.shape[1] if U.ndim == 2 else V.shape[1]
    if U.shape[0] == 0 or V.shape[0] == 0:
        return zeros(0, n)
    U = row_space(U, p)
    V = row_space(V, p)
    # y U = z V  <=>  [y, z] [U; -V] = 0
    K = left_nullspace(np.vstack([U, (-V) % p]), p)
    if K.shape[0] == 0:
        return zeros(0, n)
    return row_space(matmul(K[:, : U.shape[0]], U, p), p)


def inverse(A, p):
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    R, piv = rref(np.concatenate([A, identity(n)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ArithmeticError("matrix is singular")
    return R[:, n:]


def det(A, p) -> int:
    A = [list(map(int, row)) for row in np.asarray(A, dtype=np.int64) % p]
    n = len(A)
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = d * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            f = A[r][c] * inv % p
            if f:
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[c])]
    return d % p


def is_invertible(A, p) -> bool:
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


# --------------------------------------------------------------------------
# generic exact fields


def rref_generic(rows, zero):
    """Reduced row echelon form of a list of rows over an exact field."""
    R = [list(r) for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(R)) if R[r][col]), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = R[row][col] ** -1
        R[row] = [x * inv for x in R[row]]
        for r in range(len(R)):
            if r != row and R[r][col]:
                f = R[r][col]
                R[r] = [x - f * y for x, y in zip(R[r], R[row])]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R, pivots


def rank_generic(rows, zero) -> int:
    return len(rref_generic(rows, zero)[1])


def nullspace_generic(rows, zero, one, ncols=None):
    """Basis of ``{x : M x = 0}`` for a matrix given by rows."""
    if not rows:
        n = ncols or 0
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    n = len(rows[0])
    R, piv = rref_generic(rows, zero)
    pivset = set(piv)
    basis = []
    for j in range(n):
        if j in pivset:
            continue
        v = [zero] * n
        v[j] = one
        for i, pc in enumerate(piv):
            v[pc] = -R[i][j]
        basis.append(v)
    return basis


def charpoly_generic(M, zero, one):
    """Characteristic polynomial ``det(y I - M)`` over an exact field.

    Hessenberg reduction followed by the standard recurrence; coefficients
    returned lowest degree first (monic, length ``n + 1``).
    """
    n = len(M)
    H = [list(r) for r in M]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for r in range(n):
                H[r][m], H[r][piv] = H[r][piv], H[r][m]
        inv = one / H[m][m - 1]
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv
            if not u:
                continue
            H[i] = [a - u * b for a, b in zip(H[i], H[m])]
            for r in range(n):
                H[r][m] = H[r][m] + u * H[r][i]
    # p_k(y) = charpoly of leading k x k block
    polys = [[one]]
    for k in range(1, n + 1):
        hk = H[k - 1][k - 1]
        prev = polys[k - 1]
        cur = [zero] + list(prev)
        for i, c in enumerate(prev):
            cur[i] = cur[i] - hk * c
        t = one
        for i in range(1, k):
            t = t * H[k - i][k - i - 1]
            h = H[k - i - 1][k - 1]
            coeff = t * h
            if coeff:
                for j, c in enumerate(polys[k - i - 1]):
                    cur[j] = cur[j] - coeff * c
        polys.append(cur)
    return polys[n]


def sparse_kernel_vector(columns, zero, one):
    """Find a nonzero linear dependency among sparse columns.

    ``columns`` is a list of dicts ``{row: value}`` over an exact field.
    Returns a list of coefficients ``c`` (one per column) with
    ``sum_k c_k * columns[k] = 0`` and some ``c_k != 0``, or ``None`` if the
    columns are linearly independent.
    """
    pivots = {}  # pivot row -> (reduced column, combination dict)
    for k, col in enumerate(columns):
        vec = {r: v for r, v in col.items() if v}
        comb = {k: one}
        while vec:
            r = min(vec)
            if r not in pivots:
                break
            pcol, pcomb = pivots[r]
            f = vec[r] / pcol[r]
            for rr, vv in pcol.items():
                nv = vec.get(rr, zero) - f * vv
                if nv:
                    vec[rr] = nv
                else:
                    vec.pop(rr, None)
            for kk, vv in pcomb.items():
                nv = comb.get(kk, zero) - f * vv
                if nv:
                    comb[kk] = nv
                else:
                    comb.pop(kk, None)
        if not vec:
            return [comb.get(i, zero) for i in range(len(columns))]
        pivots[min(vec)] = (vec, comb)
    return None
