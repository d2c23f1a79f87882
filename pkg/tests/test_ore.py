import random

import pytest

from frobskew.errors import DenominatorNotInS, DivisionByZero, NotPerfect, ZeroDenominator
from frobskew.fields import GF, PolyRing, RationalFunctionField
from frobskew.ore import (
    SkewFraction,
    common_right_multiple_search,
    fraction_product,
    left_ore_witness,
    localization_normal_form,
    right_ore_witness,
)
from frobskew.parser import parse_skew_expr
from frobskew.skew import SkewPoly, gcrd_lclm, random_skew


def P(text, R):
    return parse_skew_expr(text, R)


def test_left_witness_examples():
    R2 = PolyRing(2)
    w = left_ore_witness(R2.gen, P("F", R2))
    assert w.r_tilde == P("F", R2) and w.s_tilde == R2.gen**2
    w = left_ore_witness(R2.gen + 1, P("x+1", R2))
    assert w.r_tilde == P("x+1", R2) and w.s_tilde == R2.gen + 1
    R3 = PolyRing(3)
    w = left_ore_witness(R3.gen, P("x*F^2", R3))
    assert w.r_tilde == P("x*F^2", R3) and w.s_tilde == R3.gen**9


def test_right_witness_examples():
    R = PolyRing(2)
    x = R.gen
    w = right_ore_witness(x, P("F", R))
    assert w.r_tilde == P("x*F", R) and w.s_tilde == x
    w = right_ore_witness(x, P("F+1", R))
    assert w.r_tilde == P("x*F+1", R)
    w = right_ore_witness(x, P("x^2+1", R))
    assert w.r_tilde == P("x^2+1", R)


@pytest.mark.parametrize("p", [2, 3])
def test_witness_identities_random(p):
    R = PolyRing(p)
    rng = random.Random(p)
    for _ in range(200):
        s = R.random_element(rng, nonzero=True)
        r = random_skew(R, rng, max_degree=3)
        S = SkewPoly.const(R, s)
        lw = left_ore_witness(s, r)
        assert lw.r_tilde * S == SkewPoly.const(R, lw.s_tilde) * r
        rw = right_ore_witness(s, r)
        assert S * rw.r_tilde == r * S


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        left_ore_witness(PolyRing(2).zero, SkewPoly.F(PolyRing(2)))


def test_localization_examples():
    R = PolyRing(2)
    x = R.gen
    nf = localization_normal_form(P("F", R), x, f=x)
    assert str(nf) == "(1/x^2)*F"
    a = random_skew(R, random.Random(1))
    K = RationalFunctionField(2, var="x")
    assert localization_normal_form(a, R.one, f=x).poly == a.map_coeffs(K, K)
    with pytest.raises(DenominatorNotInS):
        localization_normal_form(P("F", R), x + 1, f=x)


def test_localization_cancellation():
    R = PolyRing(2)
    rng = random.Random(3)
    for _ in range(50):
        num = random_skew(R, rng)
        d = R.gen ** rng.randint(0, 3)
        nf = localization_normal_form(num * SkewPoly.const(R, d), d, f=R.gen)
        assert nf == localization_normal_form(num, R.one, f=R.gen)


def test_localization_multiplicative():
    R = PolyRing(2)
    x = R.gen
    rng = random.Random(4)
    for _ in range(100):
        n1, n2 = random_skew(R, rng, max_degree=2), random_skew(R, rng, max_degree=2)
        d1, d2 = x ** rng.randint(0, 2), x ** rng.randint(0, 2)
        prod_num, prod_den = fraction_product(n1, d1, n2, d2)
        lhs = localization_normal_form(prod_num, prod_den, f=x)
        rhs = localization_normal_form(n1, d1, f=x) * localization_normal_form(n2, d2, f=x)
        assert lhs == rhs


def D(num, den, K):
    return SkewFraction(P(num, K), P(den, K))


def test_skew_field_examples():
    K = GF(2)
    assert D("F", "1", K) * D("1", "F", K) == SkewFraction.one(K)
    assert D("1", "F", K) + D("1", "F", K) == SkewFraction.zero(K)
    K4 = GF(2, 2)
    assert D("1", "F+1", K4) * D("F+1", "1", K4) == SkewFraction.one(K4)
    with pytest.raises(DivisionByZero):
        SkewFraction.zero(K4).inverse()
    with pytest.raises(NotPerfect):
        SkewFraction(SkewPoly.F(RationalFunctionField(2)))


def test_fraction_normal_form_is_reduced():
    K = GF(3, 2)
    rng = random.Random(8)
    for _ in range(40):
        g = random_skew(K, rng, max_degree=2, nonzero=True)
        n = random_skew(K, rng, max_degree=2, nonzero=True)
        d = random_skew(K, rng, max_degree=2, nonzero=True)
        a = SkewFraction(n * g, d * g)
        assert gcrd_lclm(a.num, a.den).gcrd == SkewPoly.one(K)
        assert a.den.is_monic()
        assert a == SkewFraction(n, d)


@pytest.mark.parametrize("K", [GF(2), GF(2, 2), GF(3, 2)], ids=str)
def test_skew_field_axioms(K):
    rng = random.Random(str(K))

    def rand():
        return SkewFraction(random_skew(K, rng, max_degree=2), random_skew(K, rng, max_degree=2, nonzero=True))

    for _ in range(25):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        if a:
            assert a * a.inverse() == SkewFraction.one(K)
            assert a.inverse() * a == SkewFraction.one(K)


def test_left_fraction_conversion():
    K = GF(2, 2)
    rng = random.Random(2)
    for _ in range(30):
        a = SkewFraction(random_skew(K, rng, nonzero=True), random_skew(K, rng, nonzero=True))
        dl, nl = a.to_left_fraction()
        # num * den^-1 == dl^-1 * nl  <=>  dl * num == nl * den
        assert dl * a.num == nl * a.den


def test_search_fails_over_imperfect_field():
    T = RationalFunctionField(2)
    res = common_right_multiple_search(P("F", T), P("t*F", T), 8)
    assert not res.found
    for m in range(0, 4):
        assert not common_right_multiple_search(P("F", T), P("t*F", T), m).found


def test_search_examples_over_F4():
    K = GF(2, 2)
    F = P("F", K)
    res = common_right_multiple_search(F, F * F, 2)
    assert res.found
    assert F * res.u == F * F * res.v and F * res.u
    # the pair (F^2, F) is another valid witness
    assert F * (F * F) == (F * F) * F


def test_search_always_succeeds_over_perfect_field():
    K = GF(2, 2)
    rng = random.Random(6)
    for _ in range(30):
        a = random_skew(K, rng, max_degree=2, nonzero=True)
        b = random_skew(K, rng, max_degree=2, nonzero=True)
        res = common_right_multiple_search(a, b, a.degree + b.degree)
        assert res.found
        assert a * res.u == b * res.v != SkewPoly.zero(K)


def test_search_finds_unit_multiple_over_rational_functions():
    # F*(t^2) = t^4 F: the pair (F, t^4 F) has the common right multiple F t^2 = t^4 F * 1
    T = RationalFunctionField(2)
    res = common_right_multiple_search(P("F", T), P("t^4*F", T), 1)
    assert res.found
