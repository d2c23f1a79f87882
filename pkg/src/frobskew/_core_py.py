"""Pure-Python implementations of the hot kernels.

Mirror of ``_core.pyx``; selected automatically when the compiled extension
is unavailable (or when ``FROBSKEW_PURE=1``).  Polynomials are lists of ints
in ``[0, p)``, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import numpy as np


def rref_modp(M, p):
    """Reduced row echelon form of an integer matrix over F_p.

    Returns ``(R, pivots)`` with ``R`` a fresh int64 array and ``pivots`` the
    list of pivot columns.
    """
    R = np.array(M, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = R.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        inv = pow(int(R[row, col]), -1, p)
        if inv != 1:
            R[row] = (R[row] * inv) % p
        others = np.nonzero(R[:, col])[0]
        for r in others:
            if r != row:
                R[r] = (R[r] - R[r, col] * R[row]) % p
        pivots.append(col)
        row += 1
    return R, pivots


def poly_mul_modp(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    out = [c % p for c in out]
    while out and not out[-1]:
        out.pop()
    return out


def poly_divmod_modp(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    inv = pow(b[-1], -1, p)
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if c:
            c = (c * inv) % p
            quo[k - db] = c
            shift = k - db
            for j in range(db + 1):
                rem[shift + j] = (rem[shift + j] - c * b[j]) % p
    rem = rem[:db]
    while rem and not rem[-1]:
        rem.pop()
    while quo and not quo[-1]:
        quo.pop()
    return quo, rem
