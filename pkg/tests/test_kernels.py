import random

import numpy as np
import pytest

from frobskew import _core_py, kernels

try:
    from frobskew import _core
except ImportError:  # pragma: no cover - extension not built
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")


def _brute_rank(M, p):
    """Rank by counting the row span (tiny matrices only)."""
    import itertools

    rows = [tuple(r) for r in M]
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(len(rows[0])))
        span.add(v)
    n = len(span)
    rk = 0
    while p**rk < n:
        rk += 1
    return rk


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rref_rank_matches_span_count(p):
    rng = random.Random(p)
    for _ in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
        R, piv = _core_py.rref_modp(M, p)
        assert len(piv) == _brute_rank(M, p)


@needs_core
@pytest.mark.parametrize("p", [2, 3, 7, 101])
def test_rref_backends_agree(p):
    rng = np.random.default_rng(p)
    for _ in range(50):
        M = rng.integers(0, p, size=(rng.integers(1, 9), rng.integers(1, 9)))
        R1, p1 = _core_py.rref_modp(M, p)
        R2, p2 = _core.rref_modp(M, p)
        assert list(p1) == list(p2)
        assert np.array_equal(np.asarray(R1), np.asarray(R2))


@needs_core
@pytest.mark.parametrize("p", [2, 3, 5, 13])
def test_poly_kernels_agree(p):
    rng = random.Random(p)
    for _ in range(200):
        a = [rng.randrange(p) for _ in range(rng.randint(0, 9))]
        b = [rng.randrange(p) for _ in range(rng.randint(1, 6))] + [rng.randrange(1, p)]
        while a and a[-1] == 0:
            a.pop()
        assert _core_py.poly_mul_modp(a, b, p) == _core.poly_mul_modp(a, b, p)
        assert _core_py.poly_divmod_modp(a, b, p) == _core.poly_divmod_modp(a, b, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_divmod_multiplies_back(p):
    rng = random.Random(10 + p)
    for _ in range(100):
        a = [rng.randrange(p) for _ in range(rng.randint(0, 8))]
        while a and a[-1] == 0:
            a.pop()
        b = [rng.randrange(p) for _ in range(rng.randint(0, 4))] + [rng.randrange(1, p)]
        q, r = kernels.poly_divmod_modp(a, b, p)
        back = kernels.poly_mul_modp(q, b, p)
        n = max(len(back), len(r))
        total = [((back[i] if i < len(back) else 0) + (r[i] if i < len(r) else 0)) % p for i in range(n)]
        while total and total[-1] == 0:
            total.pop()
        assert total == a
        assert len(r) < len(b)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
