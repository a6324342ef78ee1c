import math
from fractions import Fraction

import pytest

from berndt_forge.contour import (
    IntegralSpec,
    StructureWindow,
    berndt_eval,
    check_structure,
    prefactor,
    rhs_assembly,
    structure_window,
)
from berndt_forge.errors import SpecError
from berndt_forge.families import SumFamily
from berndt_forge.hyperbolic_sums import ctilde_base, sbar_base
from berndt_forge.numerics import digits_to_bits, eval_qxy, make_ctx, quad_berndt
from berndt_forge.numerics.series import sum_series_ctx
from berndt_forge.selftest import structure_grid
from berndt_forge.zring import QXYPoly, eval_at_half, to_qxy


def test_spec_validity():
    IntegralSpec(5, 2, "plus")
    IntegralSpec(9, 2, "minus")
    with pytest.raises(SpecError):
        IntegralSpec(7, 1, "plus")
    with pytest.raises(SpecError):
        IntegralSpec(5, 4, "plus")   # p = 1 < [4/2]
    with pytest.raises(SpecError):
        IntegralSpec(8, 2, "minus")
    with pytest.raises(SpecError):
        IntegralSpec(3, 2, "minus")
    with pytest.raises(SpecError):
        IntegralSpec(5, 0, "plus")
    with pytest.raises(SpecError):
        IntegralSpec(5, 1, "times")


def test_prefactor_examples():
    assert prefactor(IntegralSpec(5, 1, "plus")) == Fraction(-1, 4)
    assert prefactor(IntegralSpec(3, 1, "minus")) == Fraction(-1, 2)


def test_prefactor_plus_closed_form():
    for m in range(1, 7):
        for p in range(m // 2, 7):
            spec = IntegralSpec(4 * p + 1, m, "plus")
            assert prefactor(spec) == (-1) ** p * Fraction(2) ** (m - 1 - 2 * p)


def test_prefactor_nonzero_rational_everywhere():
    count = 0
    for m in range(1, 11):
        for a in range(1, 61):
            for sign in ("plus", "minus"):
                try:
                    spec = IntegralSpec(a, m, sign)
                except SpecError:
                    continue
                assert prefactor(spec) != 0
                count += 1
    assert count > 200


def test_rhs_assembly_m1():
    assert rhs_assembly(IntegralSpec(5, 1, "plus")) == {6: ctilde_base(2)}
    assert rhs_assembly(IntegralSpec(3, 1, "minus")) == {4: sbar_base(1)}


def test_m1_matches_corollary_through_bases():
    for a in (5, 9, 13, 17):
        spec = IntegralSpec(a, 1, "plus")
        base = eval_at_half(ctilde_base((a - 1) // 2)).times_pi(a + 1)
        assert berndt_eval(spec) == to_qxy(base * (1 / prefactor(spec)))
    for a in (3, 7, 11, 15):
        spec = IntegralSpec(a, 1, "minus")
        base = eval_at_half(sbar_base((a - 1) // 2)).times_pi(a + 1)
        assert berndt_eval(spec) == to_qxy(base * (1 / prefactor(spec)))


def test_m2_minus_matches_corollary_display():
    # prefactor * I = -(a pi^a S_{a-1,2}(pi) - 2 pi^(a+1) sum n^a cosh / sinh^3)
    ctx = make_ctx(digits_to_bits(60) + 32)
    pi = ctx.pi
    for a in (5, 9, 13):
        spec = IntegralSpec(a, 2, "minus")
        s = sum_series_ctx(ctx, SumFamily("S", a - 1, 2), pi)
        cube = ctx.nsum(lambda n: n ** a * ctx.cosh(n * pi) / ctx.sinh(n * pi) ** 3, [1, ctx.inf])
        display = a * pi ** a * s - 2 * pi ** (a + 1) * cube
        pf = prefactor(spec)
        got = eval_qxy(berndt_eval(spec), ctx.prec) * pf.numerator / pf.denominator
        assert abs(got + display) < ctx.mpf(10) ** -40 * abs(display)


def test_berndt_eval_examples():
    assert berndt_eval(IntegralSpec(3, 1, "minus")) == QXYPoly({(2, 2): Fraction(-1, 256)})
    assert berndt_eval(IntegralSpec(9, 2, "minus")) == QXYPoly(
        {(4, 4): Fraction(27, 5 * 2 ** 12), (6, 8): Fraction(-1, 2 ** 18)})
    assert berndt_eval(IntegralSpec(9, 1, "plus")) == QXYPoly({(5, 5): Fraction(189, 2 ** 17)})


def test_seven_one_minus_is_negative():
    val = berndt_eval(IntegralSpec(7, 1, "minus"))
    assert val == QXYPoly({(4, 4): Fraction(-9, 2 ** 13)})
    rep = quad_berndt(IntegralSpec(7, 1, "minus"), digits_to_bits(30))
    assert rep.value < 0


def test_structure_window_examples():
    assert structure_window(IntegralSpec(9, 2, "minus")) == StructureWindow(4, 6, 0, 4, 8)
    for p in range(0, 5):
        w = structure_window(IntegralSpec(4 * p + 1, 1, "plus"))
        assert (w.x_min, w.x_max, w.y_min, w.y_max) == (2 * p + 1,) * 4
    assert structure_window(IntegralSpec(11, 3, "minus")) == StructureWindow(4, 8, 0, 4, 12)


def test_structure_window_rejects_empty():
    with pytest.raises(ValueError):
        StructureWindow(3, 2, 0, 0, 1)


def test_check_structure_examples():
    spec = IntegralSpec(9, 2, "minus")
    poly = berndt_eval(spec)
    assert check_structure(poly, spec)
    assert not check_structure(poly + QXYPoly({(3, 4): 1}), spec)
    assert not check_structure(QXYPoly({(4, 9): 1}), spec)


def test_structure_corners():
    plus = berndt_eval(IntegralSpec(13, 3, "plus"))
    assert check_structure(plus, IntegralSpec(13, 3, "plus"))
    assert plus[(5, 5)] == Fraction(405405, 2 ** 20)
    assert plus[(9, 13)] == Fraction(17679, 2 ** 32)
    assert min(plus.monomials()) == (5, 5) and max(plus.monomials()) == (9, 13)
    minus = berndt_eval(IntegralSpec(11, 3, "minus"))
    assert check_structure(minus, IntegralSpec(11, 3, "minus"))
    assert minus[(4, 4)] and minus[(8, 12)]


def test_structure_small_grid():
    for spec in structure_grid(4, 6, 20):
        assert check_structure(berndt_eval(spec), spec), str(spec)


@pytest.mark.parametrize("spec", [
    IntegralSpec(3, 1, "minus"), IntegralSpec(5, 1, "plus"), IntegralSpec(9, 2, "minus"),
    IntegralSpec(9, 3, "plus"), IntegralSpec(13, 4, "minus"), IntegralSpec(17, 4, "plus"),
])
def test_berndt_eval_matches_quadrature(spec):
    exact = berndt_eval(spec)
    rep = quad_berndt(spec, digits_to_bits(60))
    mag = max(0, int(math.log10(abs(float(rep.value)) + 1)))
    ctx = make_ctx(digits_to_bits(70 + mag))
    want = eval_qxy(exact, ctx.prec)
    assert abs(ctx.mpf(rep.value) - want) < ctx.mpf(10) ** -40
