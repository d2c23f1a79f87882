"""Dense univariate polynomials over a prime field F_p.

A polynomial is a list of ints in ``[0, p)``, lowest degree first, with no
trailing zeros; ``[]`` is zero.  Multiplication and division go through the
selected kernel backend.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import InvalidParams
from .kernels import poly_divmod_modp, poly_mul_modp


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def norm(a, p):
    return trim(c % p for c in a)


def deg(a) -> int:
    """Degree, with ``-1`` for zero (internal helper only)."""
    return len(a) - 1


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def neg(a, p):
    return [(-c) % p for c in a]


def scale(a, c, p):
    c %= p
    if not c:
        return []
    return [(x * c) % p for x in a]


def mul(a, b, p):
    return poly_mul_modp(a, b, p)


def divmod_(a, b, p):
    return poly_divmod_modp(a, b, p)


def mod(a, b, p):
    return poly_divmod_modp(a, b, p)[1]


def exact_div(a, b, p):
    q, r = poly_divmod_modp(a, b, p)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def gcd(a, b, p):
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], [], []
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def pow_(a, e, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = mul(result, base, p)
        e >>= 1
        if e:
            base = mul(base, base, p)
    return result


def powmod(a, e, m, p):
    result = [1] if len(m) > 1 else []
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def frobenius_substitute(a, k):
    """``a(x^k)``; for ``k`` a power of p this is ``a^k``."""
    if not a:
        return []
    out = [0] * ((len(a) - 1) * k + 1)
    for i, c in enumerate(a):
        out[i * k] = c
    return out


def derivative(a, p):
    return trim((i * c) % p for i, c in enumerate(a) if i)


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_squarefree(a, p):
    if len(a) <= 2:
        return True
    return len(gcd(a, derivative(a, p), p)) == 1


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, p) -> bool:
    """Rabin's test over F_p."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(f, p)
    x = [0, 1]
    if sub(powmod(x, p**n, f, p), x, p):
        return False
    for r in _prime_factors(n):
        h = sub(powmod(x, p ** (n // r), f, p), x, p)
        if len(gcd(f, h, p)) != 1:
            return False
    return True


def monic_polys(degree, p):
    """All monic polynomials of a given degree, in increasing index order.

    The index of ``x^d + c_{d-1} x^{d-1} + ... + c_0`` is ``sum c_i p^i``.
    """
    for n in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(n % p)
            n //= p
        yield coeffs + [1]


@lru_cache(maxsize=None)
def least_irreducible(p: int, degree: int) -> tuple:
    if not is_prime(p):
        raise InvalidParams(f"{p} is not prime")
    if degree < 1:
        raise InvalidParams("degree must be positive")
    for f in monic_polys(degree, p):
        if f[0] == 0 and degree > 1:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def brute_force_irreducible(f, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    n = len(f) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not mod(f, g, p):
                return False
    return True


def to_str(a, var="x"):
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)
