from fractions import Fraction
from itertools import product
from math import comb, factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from berndt_forge.arith import (
    TRIANGLE_KINDS,
    bernoulli,
    even_zeta_rational,
    gamma_lm,
    printed_a_recurrence,
    printed_b_recurrence,
    sinh_power_derivative,
    triangle,
)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_rejects_odd_and_negative():
    with pytest.raises(ValueError):
        bernoulli(3)
    with pytest.raises(ValueError):
        bernoulli(-2)


def test_bernoulli_matches_sympy():
    import sympy

    for n in range(0, 41, 2):
        assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))


@given(st.integers(min_value=2, max_value=40))
def test_bernoulli_generating_recurrence(n):
    values = {j: (bernoulli(j) if j % 2 == 0 or j == 1 else 0) for j in range(n)}
    assert sum(comb(n, j) * values[j] for j in range(n)) == 0


def test_even_zeta_rational():
    assert even_zeta_rational(1) == Fraction(1, 6)
    assert even_zeta_rational(2) == Fraction(1, 90)
    assert even_zeta_rational(3) == Fraction(1, 945)
    mpmath.mp.dps = 40
    for k in range(1, 8):
        r = even_zeta_rational(k)
        assert abs(mpmath.zeta(2 * k) - mpmath.mpf(r.numerator) / r.denominator * mpmath.pi ** (2 * k)) < 1e-35


def _gamma_by_compositions(l, m):
    # direct composition sum, independent of the convolution
    total = Fraction(0)
    for ks in product(range(l + 1), repeat=m):
        if sum(ks) != l:
            continue
        term = Fraction(1)
        for k in ks:
            term *= (1 - Fraction(2) ** (1 - 2 * k)) * bernoulli(2 * k) / factorial(2 * k)
        total += term
    return (-1) ** m * 2 ** l * total


def test_gamma_lm_examples():
    assert gamma_lm(0, 5) == 1
    assert gamma_lm(1, 3) == Fraction(-1, 4)
    assert gamma_lm(2, 2) == _gamma_by_compositions(2, 2)


@given(st.integers(min_value=0, max_value=4), st.integers(min_value=1, max_value=5))
@settings(max_examples=40)
def test_gamma_lm_matches_composition_sum(l, m):
    assert gamma_lm(l, m) == _gamma_by_compositions(l, m)


def test_gamma_lm_first_coefficients():
    for m in range(1, 21):
        assert gamma_lm(0, m) == 1
        assert gamma_lm(1, m) == Fraction(-m, 12)


def test_gamma_lm_is_laurent_coefficient():
    # gamma_{l,m} = 2^-l [y^(2l)] (y / sinh y)^m
    mpmath.mp.dps = 50
    for m in (1, 2, 3):
        coeffs = mpmath.taylor(lambda y: (y / mpmath.sinh(y)) ** m if y else mpmath.mpf(1), 0, 8)
        for l in range(4):
            want = coeffs[2 * l] / 2 ** l
            got = gamma_lm(l, m)
            assert abs(want - mpmath.mpf(got.numerator) / got.denominator) < 1e-30


def test_triangle_examples():
    assert triangle("B", 1).row(1)[:2] == (1, 2)
    assert triangle("B", 2).row(2) == (1, 20, 24)
    assert triangle("D", 1).row(1) == (4, 6)


def test_triangle_rows_are_padded():
    t = triangle("B", 3)
    assert t.size == 4
    assert all(len(r) == 4 for r in t.entries)
    assert t.row(1) == (1, 2, 0, 0)


def test_triangle_rejects_bad_input():
    with pytest.raises(ValueError):
        triangle("A", 2)
    with pytest.raises(ValueError):
        triangle("B", -1)


def test_triangle_inverse_identity():
    for kind in TRIANGLE_KINDS:
        t = triangle(kind, 12)
        n = t.size
        for i in range(n):
            for j in range(n):
                acc = sum(t.entries[i][l] * t.inverse[l][j] for l in range(n))
                assert acc == (1 if i == j else 0)


def test_triangles_lower_triangular():
    for kind in TRIANGLE_KINDS:
        t = triangle(kind, 8)
        for i in range(t.size):
            for j in range(i + 1, t.size):
                assert t.entries[i][j] == 0 and t.inverse[i][j] == 0


def test_b_triangle_printed_recurrence():
    t = triangle("B", 12)
    for k in range(1, 13):
        for l in range(1, k + 1):
            assert t.entries[k][l] == printed_b_recurrence(k, l, t.entries[k - 1])


def test_diagonals_and_signs():
    b, d = triangle("B", 12), triangle("D", 12)
    bt, dt = triangle("Btilde", 12), triangle("Dtilde", 12)
    for k in range(13):
        assert b.entries[k][k] == factorial(2 * k)
        assert d.entries[k][k] == factorial(2 * k + 1)
        assert b.entries[k][0] == 1
        for l in range(k + 1):
            assert bt.entries[k][l] == (-1) ** l * b.entries[k][l]
            assert dt.entries[k][l] == (-1) ** l * d.entries[k][l]


def test_printed_a_recurrence_disagrees_with_differentiation():
    # A_{4,2}: recurrence gives 1/2, (1/3!) d^2/dy^2 sinh^-2 gives 4/6
    assert printed_a_recurrence(1, 1, {2: Fraction(1)}) == Fraction(1, 2)
    assert triangle("D", 1).row(1)[0] / factorial(3) == Fraction(2, 3)


def test_sinh_power_derivative_first_order():
    # d/dy sinh^-2 = -2 sinh^-3 cosh
    assert sinh_power_derivative(2, 1) == {(3, 1): -2}


def test_b_rows_against_finite_differences():
    mpmath.mp.dps = 80
    y0 = mpmath.mpf("1.1")
    for k in range(1, 6):
        row = triangle("B", k).row(k)
        want = sum(mpmath.mpf(c.numerator) / c.denominator / mpmath.sinh(y0) ** (2 * l + 1)
                   for l, c in enumerate(row))
        got = mpmath.diff(lambda y: 1 / mpmath.sinh(y), y0, 2 * k)
        assert abs(got - want) < mpmath.mpf(10) ** -40 * abs(want)


def test_d_rows_against_finite_differences():
    mpmath.mp.dps = 80
    y0 = mpmath.mpf("0.9")
    for k in range(1, 5):
        row = triangle("D", k).row(k)
        want = sum(mpmath.mpf(c.numerator) / c.denominator / mpmath.sinh(y0) ** (2 * l + 2)
                   for l, c in enumerate(row))
        got = mpmath.diff(lambda y: mpmath.sinh(y) ** -2, y0, 2 * k)
        assert abs(got - want) < mpmath.mpf(10) ** -40 * abs(want)


def test_tilde_rows_against_cosh_derivatives():
    mpmath.mp.dps = 80
    y0 = mpmath.mpf("0.7")
    for kind, m in (("Btilde", 1), ("Dtilde", 2)):
        for k in range(1, 4):
            row = triangle(kind, k).row(k)
            want = sum(mpmath.mpf(c.numerator) / c.denominator / mpmath.cosh(y0) ** (2 * l + m)
                       for l, c in enumerate(row))
            got = mpmath.diff(lambda y: mpmath.cosh(y) ** -m, y0, 2 * k)
            assert abs(got - want) < mpmath.mpf(10) ** -40 * abs(want)
