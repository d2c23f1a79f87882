# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p kernels: row reduction and dense polynomial arithmetic.

Same signatures and results as ``frobskew._core_py``.  All arithmetic is on
64-bit integers, so ``p`` must stay below 2**31.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline long long _inv(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_modp(M, long long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] R = np.array(M, dtype=np.int64) % p
    cdef Py_ssize_t nrows = R.shape[0], ncols = R.shape[1]
    cdef Py_ssize_t row = 0, col, r, j, piv
    cdef long long inv, f, tmp
    pivots = []
    for col in range(ncols):
        if row >= nrows:
            break
        piv = -1
        for r in range(row, nrows):
            if R[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(ncols):
                tmp = R[row, j]
                R[row, j] = R[piv, j]
                R[piv, j] = tmp
        inv = _inv(R[row, col], p)
        if inv != 1:
            for j in range(col, ncols):
                R[row, j] = (R[row, j] * inv) % p
        for r in range(nrows):
            if r != row:
                f = R[r, col]
                if f != 0:
                    for j in range(col, ncols):
                        R[r, j] = (R[r, j] - f * R[row, j]) % p
                        if R[r, j] < 0:
                            R[r, j] += p
        pivots.append(col)
        row += 1
    return R, pivots


def poly_mul_modp(list a, list b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, n
    if na == 0 or nb == 0:
        return []
    n = na + nb - 1
    cdef long long *out = <long long *> malloc(n * sizeof(long long))
    cdef long long *ca = <long long *> malloc(na * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    try:
        for i in range(n):
            out[i] = 0
        for i in range(na):
            ca[i] = a[i]
        for j in range(nb):
            cb[j] = b[j]
        for i in range(na):
            if ca[i] != 0:
                for j in range(nb):
                    out[i + j] = (out[i + j] + ca[i] * cb[j]) % p
        while n > 0 and out[n - 1] == 0:
            n -= 1
        return [out[i] for i in range(n)]
    finally:
        free(out)
        free(ca)
        free(cb)


def poly_divmod_modp(list a, list b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), k, j, db, shift, nq
    cdef long long inv, c
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = nb - 1
    if na - 1 < db:
        return [], list(a)
    nq = na - db
    cdef long long *rem = <long long *> malloc(na * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *quo = <long long *> malloc(nq * sizeof(long long))
    try:
        for k in range(na):
            rem[k] = a[k] % p
        for j in range(nb):
            cb[j] = b[j]
        for k in range(nq):
            quo[k] = 0
        inv = _inv(cb[db], p)
        for k in range(na - 1, db - 1, -1):
            c = rem[k]
            if c != 0:
                c = (c * inv) % p
                shift = k - db
                quo[shift] = c
                for j in range(db + 1):
                    rem[shift + j] = (rem[shift + j] - c * cb[j]) % p
                    if rem[shift + j] < 0:
                        rem[shift + j] += p
        while nq > 0 and quo[nq - 1] == 0:
            nq -= 1
        while db > 0 and rem[db - 1] == 0:
            db -= 1
        return [quo[k] for k in range(nq)], [rem[k] for k in range(db)]
    finally:
        free(rem)
        free(cb)
        free(quo)
