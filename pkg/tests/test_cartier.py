import itertools
import random

import numpy as np
import pytest

from frobskew import ffpoly, linalg
from frobskew.cartier import (
    Block,
    CartierModule,
    PointSet,
    brute_force_nilpotent,
    delta_crystal,
    endomorphism_field_check,
    is_bijective,
    is_nilpotent,
    minimal_cartier_submodule,
    random_block,
    simple_factors,
    validate_cartier,
)
from frobskew.errors import InvalidParams, PointNotRational
from frobskew.fields import GF
from frobskew.semilinear import semilinear_matrix


def single(C, p=2, e=1, s=1):
    return CartierModule(p, e, (Block.standard(p, e, s, np.array(C)),))


def test_json_round_trip():
    d = {"p": 2, "baseExp": 1, "blocks": [{"scalarDegree": 1, "dim": 2, "C": [[0, 1], [0, 0]]}]}
    assert CartierModule.from_json(d).to_json() == d


def test_validation():
    assert validate_cartier(single(np.random.default_rng(0).integers(0, 2, (3, 3))))["ok"]
    K = GF(2, 2)
    good = CartierModule(2, 1, (random_block(K, 2, random.Random(0)),))
    assert validate_cartier(good)["ok"]
    # the identity matrix on F_4 is linear, not semilinear
    bad = CartierModule(2, 1, (Block.standard(2, 1, 2, np.eye(2, dtype=np.int64)),))
    rep = validate_cartier(bad)
    assert not rep["ok"] and rep["violation"] == {"block": 0, "generator": 0, "basisIndex": 0}


def test_nilpotence_examples():
    r = is_nilpotent(single([[0, 1], [0, 0]]))
    assert r.nilpotent and r.v == 2
    r = is_nilpotent(single([[1, 0], [0, 1]]))
    assert not r.nilpotent and r.stable_dim == 2 and r.v == 0
    r = is_nilpotent(single([[1, 1], [0, 0]]))
    assert not r.nilpotent and r.stable_dim == 1 and r.v == 1


def test_minimal_submodule_examples():
    assert minimal_cartier_submodule(single([[0, 1], [0, 0]])).dim == 0
    M = single([[1, 1], [0, 1]])
    assert minimal_cartier_submodule(M).to_json() == M.to_json()
    Mmin = minimal_cartier_submodule(single([[1, 1], [0, 0]]))
    assert Mmin.to_json()["blocks"] == [{"scalarDegree": 1, "dim": 1, "C": [[1]]}]


def _random_module(rng):
    p = rng.choice([2, 3])
    degrees = tuple(rng.choice([1, 1, 2]) for _ in range(rng.randint(1, 2)))
    blocks = []
    for s in degrees:
        K = GF(p, s)
        n = rng.randint(0, 5 // s)
        blocks.append(random_block(K, n, rng, nilpotent_part=rng.random() < 0.4))
    return CartierModule(p, 1, tuple(blocks))


def test_nilpotence_matches_brute_force():
    rng = random.Random(5)
    for _ in range(150):
        M = _random_module(rng)
        r = is_nilpotent(M)
        assert r.nilpotent == brute_force_nilpotent(M)
        assert r.v <= M.dim
        Mmin = minimal_cartier_submodule(M)
        assert is_bijective(Mmin)
        assert minimal_cartier_submodule(Mmin).to_json() == Mmin.to_json()
        assert validate_cartier(Mmin)["ok"]


def test_fat_points():
    b = Block.standard(2, 1, 1, np.array([[0, 1], [0, 0]]), nil_exp=2)
    M = CartierModule(2, 1, (b,))
    assert validate_cartier(M)["ok"]
    assert is_nilpotent(M).nilpotent
    with pytest.raises(InvalidParams):
        simple_factors(M)


def test_simple_factors_examples():
    # companion matrix of y^3 + y + 1 over F_2
    M = single([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    fs = simple_factors(M)
    assert [(f.poly_str(), f.multiplicity, f.endo_degree) for f in fs] == [("y^3 + y + 1", 1, 3)]
    assert simple_factors(single([[0, 1], [0, 0]])) == []
    N = single([[1]])
    both = CartierModule(2, 1, (Block.standard(2, 1, 1, np.array([[0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 1]])),))
    assert sorted(f.key for f in simple_factors(both)) == sorted(f.key for f in simple_factors(M) + simple_factors(N))


def _k_linear_fp(K, P):
    return semilinear_matrix(K, P, inverse_frobenius=False)


def _random_invertible_k(K, n, rng):
    while True:
        P = [[K.random_element(rng) for _ in range(n)] for _ in range(n)]
        G = _k_linear_fp(K, P)
        if linalg.det(G, K.p) != 0:
            return G


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)])
def test_simple_factors_invariant_under_basis_change(p, s):
    K = GF(p, s)
    rng = random.Random(p * 10 + s)
    for _ in range(12):
        b = random_block(K, rng.randint(1, 3 if s == 1 else 2), rng)
        G = _random_invertible_k(K, b.dim // s, rng)
        assert all(np.array_equal(linalg.matmul(G, A, p), linalg.matmul(A, G, p)) for A in b.actions)
        C2 = linalg.matmul(linalg.matmul(G, b.C, p), linalg.inverse(G, p), p)
        M1 = CartierModule(p, 1, (b,))
        M2 = CartierModule(p, 1, (b.with_C(C2),))
        assert validate_cartier(M2)["ok"]
        assert [f.key + (f.multiplicity,) for f in simple_factors(M1)] == [
            f.key + (f.multiplicity,) for f in simple_factors(M2)
        ]


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (2, 2)])
def test_simple_factors_additive_over_extensions(p, s):
    K = GF(p, s)
    rng = random.Random(7 + p + s)
    for _ in range(12):
        n1, n2 = rng.randint(1, 2), rng.randint(1, 2)
        B1 = [[K.random_element(rng) for _ in range(n1)] for _ in range(n1)]
        B2 = [[K.random_element(rng) for _ in range(n2)] for _ in range(n2)]
        X = [[K.random_element(rng) for _ in range(n2)] for _ in range(n1)]
        B = [B1[i] + X[i] for i in range(n1)] + [[K.zero] * n1 + B2[i] for i in range(n2)]
        M = CartierModule(p, 1, (Block.from_k_matrix(K, B),))
        A = CartierModule(p, 1, (Block.from_k_matrix(K, B1),))
        Q = CartierModule(p, 1, (Block.from_k_matrix(K, B2),))
        counts = {}
        for f in simple_factors(A) + simple_factors(Q):
            counts[f.key] = counts.get(f.key, 0) + f.multiplicity
        assert {f.key: f.multiplicity for f in simple_factors(M)} == counts


def _is_simple_brute(b: Block) -> bool:
    """No proper nonzero subspace stable under C and the scalar actions."""
    p, n = b.p, b.dim
    ops = (b.C,) + tuple(b.actions)
    for v in itertools.product(range(p), repeat=n):
        if not any(v):
            continue
        span = np.array([v], dtype=np.int64)
        while True:
            grown = np.vstack([span] + [linalg.matmul(span, A, p) for A in ops])
            new = linalg.row_space(grown, p)
            if new.shape[0] == span.shape[0]:
                break
            span = new
        if span.shape[0] < n:
            return False
    return True


def test_endomorphism_fields_of_simples():
    rng = random.Random(11)
    checked = 0
    for _ in range(400):
        p, s = rng.choice([(2, 1), (2, 2), (3, 1), (2, 4), (3, 2)])
        K = GF(p, s)
        n = rng.randint(1, max(1, 4 // s))
        b = random_block(K, n, rng)
        M = CartierModule(p, 1, (b,))
        # a simple with C = 0 is nilpotent and vanishes as a crystal
        if b.dim > 4 or is_nilpotent(M).nilpotent or not _is_simple_brute(b):
            continue
        (f,) = simple_factors(M)
        assert f.multiplicity == 1
        rep = endomorphism_field_check(b)
        assert rep["isField"]
        assert rep["size"] == p**f.endo_degree
        checked += 1
    assert checked > 20


def test_factor_polys_irreducible_and_not_y():
    rng = random.Random(12)
    for _ in range(60):
        M = _random_module(rng)
        for f in simple_factors(M):
            assert ffpoly.is_irreducible(list(f.poly))
            assert f.poly[0]


def test_delta_crystal():
    X = PointSet.rational(2, 3)
    M = delta_crystal(X, 1)
    assert [b.dim for b in M.blocks] == [0, 1, 0]
    assert M.blocks[1].C.tolist() == [[1]]
    assert [f.poly_str() for f in simple_factors(M)] == ["y + 1"]
    assert not is_nilpotent(M).nilpotent
    with pytest.raises(PointNotRational):
        delta_crystal(PointSet(2, 1, (1, 2)), 1)
