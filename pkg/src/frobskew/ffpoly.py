"""Univariate polynomials over a finite field, with factorization.

Polynomials are lists of :class:`~frobskew.fields.FieldElem`, lowest degree
first, no trailing zeros.  Factorization is squarefree decomposition, then
distinct-degree, then Cantor-Zassenhaus equal-degree splitting driven by a
seeded RNG so results (sorted anyway) never depend on global state.
"""

from __future__ import annotations

import random

from .fields import FieldSpec


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b):
    n = max(len(a), len(b))
    z = (a or b)[0].field.zero if (a or b) else None
    return trim((a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n))


def sub(a, b):
    return add(a, [-c for c in b])


def mul(a, b):
    if not a or not b:
        return []
    z = a[0].field.zero
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    z = b[0].field.zero
    if len(a) < len(b):
        return [], trim(a)
    inv = b[-1].inverse()
    q = [z] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = a[k + j] - c * y
    return trim(q), trim(a[: len(b) - 1])


def mod(a, b):
    return divmod_(a, b)[1]


def monic(a):
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def gcd(a, b):
    while b:
        a, b = b, mod(a, b)
    return monic(a)


def powmod(a, e, m):
    one = m[0].field.one
    result = [one] if len(m) > 1 else []
    base = mod(a, m)
    while e:
        if e & 1:
            result = mod(mul(result, base), m)
        e >>= 1
        if e:
            base = mod(mul(base, base), m)
    return result


def derivative(a):
    return trim(c * i for i, c in enumerate(a) if i)


def evaluate(a, x):
    acc = x.field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pth_root_poly(a, K: FieldSpec):
    # a(y) = b(y)^p with b = sum c_i^(1/p) y^i; only exponents divisible by p occur
    p = K.p
    inv_exp = pow(p, K.r - 1)  # x -> x^(p^(r-1)) inverts x -> x^p on F_{p^r}
    return trim(a[i] ** inv_exp for i in range(0, len(a), p))


def squarefree_decomposition(f):
    """Pairs ``(g, e)`` with ``f = lc * prod g^e``, each ``g`` monic squarefree."""
    if len(f) <= 1:
        return []
    K = f[0].field
    f = monic(f)
    out = []
    df = derivative(f)
    if not df:
        return [(g, e * K.p) for g, e in squarefree_decomposition(_pth_root_poly(f, K))]
    c = gcd(f, df)
    w = divmod_(f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c)
        z = divmod_(w, y)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = divmod_(c, y)[0]
    if len(c) > 1:
        out.extend((g, e * K.p) for g, e in squarefree_decomposition(_pth_root_poly(c, K)))
    return out


def distinct_degree(f):
    """Pairs ``(h, d)``: ``h`` is the product of the degree-``d`` irreducible factors."""
    K = f[0].field
    one = K.one
    x = [K.zero, one]
    out = []
    h = x
    d = 0
    f = monic(f)
    while 2 * (d + 1) <= len(f) - 1:
        d += 1
        h = powmod(h, K.order, f)
        g = gcd(f, sub(h, x))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g)[0]
            h = mod(h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, rng):
    K = f[0].field
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim(K.random_element(rng) for _ in range(n))
        if len(a) < 2:
            continue
        if K.p == 2:
            # trace map a + a^2 + ... + a^(2^(r d - 1))
            t = a
            acc = a
            for _ in range(K.r * d - 1):
                t = mod(mul(t, t), f)
                acc = add(acc, t)
            b = acc
        else:
            b = sub(powmod(a, (K.order**d - 1) // 2, f), [K.one])
        g = gcd(f, b)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, rng) + _equal_degree(divmod_(f, g)[0], d, rng)


def key(f):
    """Canonical sort key: degree, then coefficient indices from the top."""
    return (len(f), tuple(c.n for c in reversed(f)))


def factor(f, seed: int = 0):
    """Monic irreducible factorization as sorted ``[(g, e), ...]``."""
    rng = random.Random(seed)
    out = {}
    for g, e in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                k = tuple(irr)
                out[k] = out.get(k, 0) + e
    return sorted(((list(g), e) for g, e in out.items()), key=lambda ge: key(ge[0]))


def is_irreducible(f) -> bool:
    if len(f) < 2:
        return False
    fs = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


def brute_force_factor(f):
    """Trial division by every monic polynomial in increasing degree (test oracle)."""
    from itertools import product

    K = f[0].field
    f = monic(f)
    out = []
    d = 1
    while len(f) > 1 and 2 * d <= len(f) - 1:
        found = False
        for tail in product(range(K.order), repeat=d):
            g = [K.from_index(i) for i in tail] + [K.one]
            qt, r = divmod_(f, g)
            if not r:
                out.append(g)
                f = qt
                found = True
                break
        if not found:
            d += 1
    if len(f) > 1:
        out.append(f)
    agg = {}
    for g in out:
        agg[tuple(g)] = agg.get(tuple(g), 0) + 1
    return sorted(((list(g), e) for g, e in agg.items()), key=lambda ge: key(ge[0]))


def to_str(a, var="y"):
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        cs = str(c)
        if "+" in cs:
            cs = f"({cs})"
        if i == 0:
            terms.append(cs)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms)
