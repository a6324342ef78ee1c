from fractions import Fraction

import mpmath
import pytest

from berndt_forge.conjecture import N_MAX, check_support, check_x9m6, screen
from berndt_forge.paper_examples import CONJECTURE_IDS, conjecture_support
from berndt_forge.zring import QXYPoly


def test_conjecture_support_shapes():
    sup = conjecture_support("plus-x1", 1)
    assert sup["odd"] == (1, 1, [(4, 1)])
    assert sup["even"][:2] == (1, 2)
    assert (0, 0) in sup["even"][2] and (8, 4) in sup["even"][2]
    for cid in ("plus-x1", "plus-x5"):
        for n in range(1, N_MAX + 1):
            sup = conjecture_support(cid, n)
            assert sup["odd"][1] == 2 * n - 1 and sup["even"][1] == 2 * n
            for _, _, span in sup.values():
                assert len(span) == len(set(span))


def test_conjecture_support_rejects_bad_input():
    with pytest.raises(ValueError):
        conjecture_support("plus-x1", 0)
    with pytest.raises(ValueError):
        conjecture_support("plus-x7", 1)
    assert set(CONJECTURE_IDS) == {"plus-x1", "plus-x5", "x9m6"}


def test_x9m6_agrees_to_forty_digits():
    rep = check_x9m6(60)
    assert rep.passed
    assert rep.agreement_digits >= 40
    assert rep.tail_bound < 1e-60


def test_plus_x1_first_level():
    odd, even = check_support("plus-x1", 1)
    assert odd.method == "exact" and odd.in_span
    assert odd.value_poly() == QXYPoly({(1, 1): Fraction(1, 32)})
    assert even.method == "pslq" and even.in_span
    assert even.value_poly() == QXYPoly({(0, 0): Fraction(-1, 8), (2, 4): Fraction(1, 512)})


def test_pslq_value_against_direct_quadrature():
    # x / (cos x + cosh x)^2, integrated directly by mpmath
    mpmath.mp.dps = 40
    f = lambda x: x / (mpmath.cos(x) + mpmath.cosh(x)) ** 2  # noqa: E731
    direct = mpmath.quad(f, mpmath.linspace(0, 80, 81))
    g = mpmath.gamma(mpmath.mpf(1) / 4)
    assert abs(direct - (-mpmath.mpf(1) / 8 + g ** 8 / (512 * mpmath.pi ** 4))) < 1e-30


def test_plus_x5_first_level():
    odd, even = check_support("plus-x5", 1)
    assert (odd.a, odd.m, even.a, even.m) == (5, 1, 5, 2)
    assert odd.in_span and even.in_span
    assert odd.value_poly() == QXYPoly({(3, 3): Fraction(3, 2048)})


def test_check_support_rejects_x9m6():
    with pytest.raises(ValueError):
        check_support("x9m6", 1)


def test_screen_validates_n_max():
    with pytest.raises(ValueError):
        screen("plus-x1", 0)
    with pytest.raises(ValueError):
        screen("plus-x1", N_MAX + 1)
    with pytest.raises(ValueError):
        screen("nope", 1)
    assert len(screen("plus-x1", 1)) == 2


@pytest.mark.slow
def test_level_two_supports():
    for cid in ("plus-x1", "plus-x5"):
        for verdict in check_support(cid, 2):
            assert verdict.in_span, (cid, verdict.a, verdict.m, verdict.detail)
