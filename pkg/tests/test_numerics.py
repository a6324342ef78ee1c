import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berndt_forge.contour import IntegralSpec, berndt_eval
from berndt_forge.conjecture import RawIntegral
from berndt_forge.errors import DomainError, SpecError
from berndt_forge.families import SumFamily
from berndt_forge.numerics import (
    agm,
    digits_to_bits,
    ellipe,
    ellipk,
    ellipke,
    eval_qxy,
    eval_zring,
    gamma_quarter,
    make_ctx,
    quad_berndt,
    rational_reconstruct,
    sum_series,
    to_fraction,
    y_of_x,
    z_jet_numeric,
)
from berndt_forge.numerics.core import _agm_steps, _ellipke
from berndt_forge.numerics.quad import _tail_bound, integrand
from berndt_forge.zring import QXYPoly, ZRingElem

BITS60 = digits_to_bits(60)
GAMMA_QUARTER_60 = "3.625609908221908311930685155867672002995"


def _tol(digits):
    return mpmath.mpf(10) ** -digits


def test_digit_bit_conversion():
    assert digits_to_bits(60) == 200
    assert make_ctx(100).prec == 100


def test_agm_examples():
    assert agm(1, 1, 100) == 1
    assert str(agm(1, mpmath.sqrt(2), 100)).startswith("1.19814023")
    with pytest.raises(DomainError):
        agm(0, 1, 64)


def test_agm_matches_mpmath():
    mpmath.mp.prec = 300
    assert abs(agm(1, mpmath.sqrt(2), 300) - mpmath.agm(1, mpmath.sqrt(2))) < mpmath.mpf(2) ** -290


def test_agm_quadratic_convergence():
    for prec in (64, 200, 1000, 4000):
        ctx = make_ctx(prec)
        for a, b in (("1", "2"), ("0.5", "2"), ("0.75", "1.25")):
            _, steps = _agm_steps(ctx, ctx.mpf(a), ctx.mpf(b))
            assert steps <= math.log2(prec) + 4


def test_k_from_agm_matches_integral():
    mpmath.mp.dps = 40
    x = mpmath.mpf("0.3")
    direct = mpmath.quad(lambda t: 1 / mpmath.sqrt(1 - x * mpmath.sin(t) ** 2), [0, mpmath.pi / 2])
    assert abs(ellipk(Fraction(3, 10), 130) - direct) < 1e-35
    assert abs(ellipe(Fraction(3, 10), 130) - mpmath.ellipe(x)) < 1e-35


def test_ellipke_rejects_domain():
    with pytest.raises(DomainError):
        ellipke(0, 64)
    with pytest.raises(DomainError):
        ellipke(Fraction(3, 2), 64)


def test_gamma_quarter_value():
    g = gamma_quarter(BITS60)
    assert mpmath.nstr(g, 40, strip_zeros=False).startswith(GAMMA_QUARTER_60[:40])
    mpmath.mp.dps = 70
    assert abs(g * mpmath.gamma(mpmath.mpf(3) / 4) - mpmath.sqrt(2) * mpmath.pi) < _tol(58)
    with pytest.raises(ValueError):
        gamma_quarter(32)


def test_legendre_relation():
    ctx = make_ctx(BITS60 + 32)
    for x in ("0.2", "0.5", "0.8"):
        x = ctx.mpf(x)
        k, e = _ellipke(ctx, x)
        kp, ep = _ellipke(ctx, 1 - x)
        assert abs(e * kp + ep * k - k * kp - ctx.pi / 2) < ctx.mpf(10) ** -60


def test_z_jets_at_half():
    mpmath.mp.dps = 70
    g = gamma_quarter(BITS60 + 32)
    z_half = g ** 2 / (2 * mpmath.pi ** 1.5)
    assert abs(z_jet_numeric(Fraction(1, 2), 0, BITS60) - z_half) < _tol(55)
    assert abs(z_jet_numeric(Fraction(1, 2), 2, BITS60) - z_half) < _tol(55)


def test_z_jet_finite_difference():
    ctx = make_ctx(digits_to_bits(80))
    h = ctx.mpf(10) ** -20
    x0 = ctx.mpf("0.3")
    fd = (z_jet_numeric(x0 + h, 0, 266) - z_jet_numeric(x0 - h, 0, 266)) / (2 * h)
    assert abs(z_jet_numeric(x0, 1, 266) - fd) < ctx.mpf(10) ** -35


def test_z_jet_domain():
    with pytest.raises(DomainError):
        z_jet_numeric(Fraction(1), 0, 64)
    with pytest.raises(ValueError):
        z_jet_numeric(Fraction(1, 2), -1, 64)


def test_y_of_x():
    mpmath.mp.dps = 70
    assert abs(y_of_x(Fraction(1, 2), BITS60) - mpmath.pi) < _tol(58)
    assert y_of_x(Fraction(3, 10), BITS60) > 0
    for x in (Fraction(1, 10), Fraction(3, 10), Fraction(9, 20)):
        prod = y_of_x(x, BITS60) * y_of_x(1 - x, BITS60)
        assert abs(prod - mpmath.pi ** 2) < _tol(55)


def test_sum_series_examples():
    mpmath.mp.dps = 70
    pi = mpmath.pi
    c = sum_series(SumFamily("Ctilde", 1, 1), pi, BITS60)
    assert mpmath.nstr(c, 10).startswith("0.174150491")
    s = sum_series(SumFamily("Sbar", 3, 1), pi, BITS60)
    assert mpmath.nstr(s, 6) == "0.0606568"
    big = sum_series(SumFamily("S", 2, 2), 40, BITS60)
    assert 0 < big < 4 * mpmath.exp(-80) * 1.0001
    with pytest.raises(ValueError):
        sum_series(SumFamily("S", 2, 2), 0, 64)


def test_sum_series_against_nsum():
    mpmath.mp.dps = 50
    y = mpmath.mpf("1.3")
    want = mpmath.nsum(lambda n: (-1) ** (n - 1) * (n - 0.5) ** 5 / mpmath.cosh((n - 0.5) * y) ** 3,
                       [1, mpmath.inf])
    got = sum_series(SumFamily("Ctilde", 5, 3), y, digits_to_bits(50))
    assert abs(got - want) < _tol(40) * abs(want)


def test_quad_examples():
    mpmath.mp.dps = 80
    rep = quad_berndt(IntegralSpec(3, 1, "minus"), BITS60)
    assert mpmath.nstr(rep.value, 7) == "-11.81705"
    want = eval_qxy(QXYPoly({(2, 2): Fraction(-1, 256)}), BITS60 + 40)
    assert abs(rep.value - want) < _tol(40)
    assert rep.tail_bound < _tol(60)
    rep5 = quad_berndt(IntegralSpec(5, 1, "plus"), BITS60)
    assert abs(rep5.value - eval_qxy(QXYPoly({(3, 3): Fraction(3, 2048)}), BITS60 + 40)) < _tol(40)


def test_quad_large_example():
    rep = quad_berndt(IntegralSpec(33, 2, "plus"), BITS60)
    exact = berndt_eval(IntegralSpec(33, 2, "plus"))
    mag = int(math.log10(abs(float(rep.value)))) + 1
    want = eval_qxy(exact, digits_to_bits(60 + mag + 10))
    mpmath.mp.dps = 60 + mag + 10
    assert abs(rep.value - want) < _tol(30) * max(1, abs(want))


def test_quad_rejects_divergent():
    with pytest.raises(SpecError):
        quad_berndt(RawIntegral(3, 2, "minus"), 100)
    with pytest.raises(SpecError):
        quad_berndt(RawIntegral(3, 1, "sideways"), 100)


def test_minus_integrand_near_zero_is_stable():
    # series branch below the cut agrees with a direct high-precision evaluation
    hi = make_ctx(2000)
    lo = make_ctx(200)
    for x in ("0.001", "0.05", "0.12"):
        direct = hi.mpf(x) ** 9 / (hi.cos(hi.mpf(x)) - hi.cosh(hi.mpf(x))) ** 2
        got = integrand(lo, 9, 2, -1, lo.mpf(x))
        assert abs(got - direct) < hi.mpf(10) ** -50 * abs(direct)


@pytest.mark.parametrize("a,m,sign", [(5, 1, 1), (9, 2, -1), (13, 3, 1)])
def test_tail_bound_is_certified(a, m, sign):
    # the bound is asymptotically tight, so the reference integral needs high precision
    bits = digits_to_bits(30)
    rep = quad_berndt(RawIntegral(a, m, "plus" if sign > 0 else "minus"), bits)
    mpmath.mp.dps = 100
    t = mpmath.mpf(rep.cutoff)
    ctx = make_ctx(400)
    extra = mpmath.quad(lambda x: integrand(ctx, a, m, sign, ctx.mpf(x)), mpmath.linspace(t, 2 * t, 40))
    assert abs(extra) < _tail_bound(ctx, a, m, ctx.mpf(t))
    assert abs(extra) <= rep.tail_bound * (1 + mpmath.mpf(2) ** -(bits - 8))
    assert rep.tail_bound < mpmath.mpf(2) ** -bits


def test_quad_is_deterministic():
    a = quad_berndt(IntegralSpec(9, 2, "minus"), 150)
    b = quad_berndt(IntegralSpec(9, 2, "minus"), 150)
    assert a.value == b.value and a.tail_bound == b.tail_bound


def test_eval_qxy_examples():
    assert eval_qxy(QXYPoly(), 100) == 0
    v = eval_qxy(QXYPoly({(2, 2): 1}), BITS60)
    assert mpmath.nstr(v, 7) == "3025.164"
    assert mpmath.nstr(eval_qxy(QXYPoly({(2, 2): Fraction(-1, 256)}), BITS60), 7) == "-11.81705"


def test_eval_zring_matches_closed_form_at_half():
    mpmath.mp.dps = 70
    z = ZRingElem.z()
    got = eval_zring(z * ZRingElem.z(1), Fraction(1, 2), BITS60)
    assert abs(got - 2 / mpmath.pi) < _tol(55)


def test_rational_reconstruct_examples():
    mpmath.mp.dps = 80
    assert rational_reconstruct(mpmath.mpf(1) / 3, 10 ** 6, 80) == Fraction(1, 3)
    assert rational_reconstruct(+mpmath.pi, 10, 80) is None
    ratio = sum_series(SumFamily("Sbar", 3, 1), mpmath.pi, 300) / eval_qxy(QXYPoly({(2, 6): 1}), 300)
    assert rational_reconstruct(ratio, 10 ** 6, 80) == Fraction(1, 512)


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6))
@settings(max_examples=60)
def test_rational_reconstruct_round_trip(q):
    ctx = make_ctx(400)
    v = ctx.mpf(q.numerator) / q.denominator
    assert rational_reconstruct(v, 10 ** 6, 100) == q


def test_to_fraction():
    assert to_fraction(0.5) == Fraction(1, 2)
    assert to_fraction(mpmath.mpf(-3) / 4) == Fraction(-3, 4)
    assert to_fraction(mpmath.mpf(0)) == 0
    with pytest.raises(ValueError):
        to_fraction(mpmath.inf)
