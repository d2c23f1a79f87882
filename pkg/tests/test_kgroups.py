import random
from fractions import Fraction

import numpy as np
import pytest

from frobskew.cartier import Block, CartierModule, PointSet, delta_crystal, random_block, random_cartier
from frobskew.errors import InvalidParams, MultiplePoints, NotPerfect
from frobskew.fields import GF, RationalFunctionField
from frobskew.fmodules import koszul_presentation, random_fmodule
from frobskew.kgroups import (
    DPresentation,
    chow_frobenius_demo,
    k0_class,
    k0_pushforward_defect,
    presentation_from_koszul,
    qd_rank,
    rank_over_D,
    scramble,
    taelman_trace,
    trace_of_class,
    verify_taelman_ses,
)
from frobskew.parser import parse_skew_expr


def test_k0_class_examples():
    X = PointSet.rational(2, 2)
    c = k0_class(delta_crystal(X, 0))
    assert [(t.point, t.poly_str(), n) for t, n in c.terms] == [(0, "y + 1", 1)]
    nil = CartierModule(2, 1, (Block.standard(2, 1, 1, np.array([[0, 1], [0, 0]])),))
    assert not k0_class(nil)
    M = random_cartier(X, random.Random(1))
    assert k0_class(M.direct_sum(M)) == 2 * k0_class(M)
    assert k0_class(M) - k0_class(M) == k0_class(X.zero_module())


def test_trace_examples():
    X = PointSet.rational(3, 3)
    Fq = GF(3)
    assert taelman_trace(delta_crystal(X, 2)).values == (Fq.zero, Fq.zero, Fq.one)
    assert taelman_trace(delta_crystal(X, 0, 2)).values[0] == Fq(2)
    nil = CartierModule(3, 1, (Block.standard(3, 1, 1, np.array([[0, 1, 2], [0, 0, 1], [0, 0, 0]])),))
    assert taelman_trace(nil).is_zero()
    mixed = PointSet(2, 1, (1, 2))
    M = random_cartier(mixed, random.Random(0))
    assert taelman_trace(M).values[1] is None


def _brute_trace(b: Block, Fq):
    """Trace of C on a rational block read off the F_p matrix."""
    return Fq(int(np.trace(b.C)) % b.p)


@pytest.mark.parametrize("p", [2, 3])
def test_trace_additive_and_factors_through_k0(p):
    rng = random.Random(p)
    X = PointSet.rational(p, 3)
    Fq = GF(p)
    for _ in range(100):
        M, N = random_cartier(X, rng), random_cartier(X, rng)
        tM, tN = taelman_trace(M), taelman_trace(N)
        assert (tM + tN).values == taelman_trace(M.direct_sum(N)).values
        assert tM.values == trace_of_class(k0_class(M), X).values
        assert tM.values == tuple(_brute_trace(b, Fq) for b in M.blocks)


def test_trace_over_extension_coefficients():
    # q = 4: points with residue field F_4 are rational
    X = PointSet.rational(2, 2, base_exp=2)
    rng = random.Random(4)
    for _ in range(30):
        M = random_cartier(X, rng)
        assert taelman_trace(M).values == trace_of_class(k0_class(M), X).values


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 3, 5])
def test_ses_report(p, n):
    rep = verify_taelman_ses(PointSet.rational(p, n), samples=30, seed=n)
    assert rep["ok"]
    assert rep["traceImageRank"] == n


def test_relation_with_equal_constants_over_F2():
    X = PointSet.rational(2, 1)
    one = GF(2).one
    M = delta_crystal(X, 0)
    # [(F,1)] + [(F,1)] - [(F,0)]: the last term is nilpotent
    assert not k0_class(M.scaled(one + one))
    t = taelman_trace(M.scaled(one)) + taelman_trace(M.scaled(one)) - taelman_trace(M.scaled(one + one))
    assert t.is_zero()


def test_qd_rank_examples():
    K = GF(2)
    F = parse_skew_expr("F", K)
    one = parse_skew_expr("1", K)
    assert qd_rank(DPresentation(K, 2, [])) == 2
    assert qd_rank(DPresentation(K, 1, [[F]])) == 0
    assert qd_rank(DPresentation(K, 2, [[F, one]])) == 1
    with pytest.raises(NotPerfect):
        rank_over_D([[parse_skew_expr("F", RationalFunctionField(2))]], RationalFunctionField(2))


def test_rank_over_D_dependent_rows():
    K = GF(2, 2)
    rng = random.Random(3)
    from frobskew.skew import random_skew

    for _ in range(20):
        r1 = [random_skew(K, rng, max_degree=2, nonzero=True) for _ in range(3)]
        h = random_skew(K, rng, max_degree=1, nonzero=True)
        r2 = [a * h for a in r1]  # right multiple of r1
        assert rank_over_D([r1, r2], K) == 1


@pytest.mark.parametrize("K", [GF(2), GF(2, 2), GF(3, 2)], ids=str)
def test_koszul_presentations_have_rank_zero(K):
    rng = random.Random(str(K))
    for _ in range(10):
        pres = koszul_presentation(random_fmodule(K, rng.randint(1, 3), rng))
        P = presentation_from_koszul(pres)
        assert qd_rank(P) == 0
        for _ in range(3):
            assert qd_rank(scramble(P, rng)) == 0


def test_scramble_preserves_rank():
    K = GF(2, 2)
    rng = random.Random(8)
    from frobskew.skew import random_skew

    for _ in range(20):
        n = rng.randint(1, 3)
        rows = [[random_skew(K, rng, max_degree=1) for _ in range(n)] for _ in range(rng.randint(0, 3))]
        P = DPresentation(K, n, rows)
        base = qd_rank(P)
        assert qd_rank(scramble(P, rng, steps=6)) == base


def test_pushforward_defect():
    K = GF(2, 2)
    rng = random.Random(2)
    for _ in range(20):
        M = CartierModule(2, 1, (random_block(K, rng.randint(0, 3), rng),))
        assert k0_pushforward_defect(M) == 0
    assert k0_pushforward_defect(PointSet.rational(2, 1).zero_module()) == 0
    with pytest.raises(MultiplePoints):
        k0_pushforward_defect(PointSet.rational(2, 2).zero_module())


def test_chow_examples():
    r = chow_frobenius_demo(2, 3)
    assert (r.kernel_dim, r.cokernel_dim) == (1, 1)
    assert [r.matrix[i][i] for i in range(3)] == [Fraction(0), Fraction(-2), Fraction(-8)]
    assert (chow_frobenius_demo(0, 7).kernel_dim, chow_frobenius_demo(5, 2).cokernel_dim) == (1, 1)
    with pytest.raises(InvalidParams):
        chow_frobenius_demo(2, 6)
    with pytest.raises(InvalidParams):
        chow_frobenius_demo(-1, 2)
