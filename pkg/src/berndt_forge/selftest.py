"""Invariant suite behind ``berndt-forge selftest``.

Each check is named ``module/invariant`` and raises AssertionError (or a
BerndtError) on failure.  The runner stops at the first failure.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from . import arith
from .contour import IntegralSpec, berndt_eval, check_structure, prefactor
from .elliptic_series import XPowerSeries, p_poly, q_poly, sn_cn_dn
from .errors import BerndtError, FixtureError
from .families import SumFamily
from .hyperbolic_sums import fixtures
from .hyperbolic_sums.bases import base_shape, cprime_base, ctilde_base, s2_base, sbar_base
from .hyperbolic_sums.reduce import MIN_BASE_INDEX, reduced_element
from .numerics.core import _ellipke, _gamma_quarter, _y_of_x, digits_to_bits, make_ctx
from .numerics.evaluate import ZRingEvaluator, eval_qxy
from .numerics.quad import quad_berndt
from .numerics.series import sum_series_ctx
from .paper_examples import EXAMPLES
from .zring.poly import SIGMA, SIGMA_PRIME, X, PolyX
from .zring.ring import ZRingElem, ddx, ddy

__all__ = ["Check", "checks", "run"]

TOL_DIGITS = 40
WORK_DIGITS = 60


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable[[bool], None]


# -- arith ----------------------------------------------------------------

def _triangle_inverse(deep: bool) -> None:
    k = 20 if deep else 12
    for kind in arith.TRIANGLE_KINDS:
        t = arith.triangle(kind, k)
        for i in range(k + 1):
            for j in range(k + 1):
                acc = sum(t.entries[i][l] * t.inverse[l][j] for l in range(k + 1))
                assert acc == (1 if i == j else 0), f"{kind} k={k} entry ({i},{j}) = {acc}"


def _b_recurrence(deep: bool) -> None:
    k = 20 if deep else 12
    t = arith.triangle("B", k)
    for i in range(1, k + 1):
        for l in range(1, i + 1):
            want = arith.printed_b_recurrence(i, l, tuple(t.entries[i - 1]))
            assert t.entries[i][l] == want, f"B[{i},{l}] = {t.entries[i][l]}, recurrence {want}"


def _diagonals(deep: bool) -> None:
    k = 20 if deep else 12
    b, d = arith.triangle("B", k), arith.triangle("D", k)
    bt, dt = arith.triangle("Btilde", k), arith.triangle("Dtilde", k)
    for i in range(k + 1):
        assert b.entries[i][i] == factorial(2 * i), f"B[{i},{i}]"
        assert d.entries[i][i] == factorial(2 * i + 1), f"D[{i},{i}]"
        assert b.entries[i][0] == 1, f"B[{i},0]"
        for l in range(i + 1):
            assert bt.entries[i][l] == (-1) ** l * b.entries[i][l], f"Btilde[{i},{l}]"
            assert dt.entries[i][l] == (-1) ** l * d.entries[i][l], f"Dtilde[{i},{l}]"


def _gamma_lm(deep: bool) -> None:
    for m in range(1, 41 if deep else 21):
        assert arith.gamma_lm(0, m) == 1, f"gamma(0,{m})"
        assert arith.gamma_lm(1, m) == Fraction(-m, 12), f"gamma(1,{m})"


def _bernoulli(deep: bool) -> None:
    top = 60 if deep else 30
    table = {n: arith.bernoulli(n) for n in range(0, top + 1, 2)}
    table[1] = Fraction(-1, 2)
    for n in range(2, top + 1):
        total = sum(comb(n, j) * table.get(j, 0) for j in range(n))
        assert total == 0, f"Bernoulli recurrence fails at n={n}"


def _sinh_derivatives(deep: bool) -> None:
    ctx = make_ctx(digits_to_bits(80))
    y0 = ctx.mpf("1.1")
    for k in range(1, 6):
        row = arith.triangle("B", k).entries[k]
        want = sum(ctx.mpf(c.numerator) / c.denominator / ctx.sinh(y0) ** (2 * l + 1)
                   for l, c in enumerate(row))
        got = ctx.diff(lambda y: 1 / ctx.sinh(y), y0, 2 * k)
        assert abs(got - want) < ctx.mpf(10) ** -40 * abs(want), f"d^{2 * k}/dy^{2 * k} 1/sinh"


# -- elliptic_series ------------------------------------------------------

def _series_identities(deep: bool) -> None:
    order = 40 if deep else 30
    sn, cn, dn = sn_cn_dn(order)
    one = XPowerSeries([PolyX.const(1)] + [PolyX()] * (order - 1))
    assert sn * sn + cn * cn == one, "sn^2 + cn^2 != 1"
    assert dn * dn + sn * sn * X == one, "dn^2 + x sn^2 != 1"
    sd = sn / dn
    for t in range(0, order, 2):
        assert sd[t].is_zero(), f"sd has a nonzero u^{t} coefficient"


def _pq_symmetry(deep: bool) -> None:
    top = 45 if deep else 29
    for n in range(1, top + 1, 2):
        p = p_poly(n)
        sign = 1 if n % 4 == 1 else -1
        assert p.reflect() == p * sign, f"p_{n}(1-x) != {sign} p_{n}(x)"
    for n in range(0, top + 1, 2):
        q = q_poly(n)
        sign = 1 if n % 4 == 0 else -1
        assert q.reflect() == q * sign, f"q_{n}(1-x) != {sign} q_{n}(x)"


# -- zring ----------------------------------------------------------------

def _random_element(rng: random.Random) -> ZRingElem:
    total = ZRingElem()
    for _ in range(rng.randint(1, 3)):
        coeff = PolyX([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))])
        jets = {j: rng.randint(0, 2) for j in range(rng.randint(1, 4))}
        total = total + ZRingElem.monomial(coeff, z=rng.randint(0, 3), jets=jets,
                                           v=rng.randint(0, 1), vp=rng.randint(0, 1))
    return total


def _leibniz(deep: bool) -> None:
    rng = random.Random(20240611)
    for _ in range(60 if deep else 15):
        e1, e2 = _random_element(rng), _random_element(rng)
        assert ddy(e1 * e2) == ddy(e1) * e2 + e1 * ddy(e2), f"Leibniz fails for {e1}, {e2}"


def _reduction_soundness(deep: bool) -> None:
    v, vp = ZRingElem.v(), ZRingElem.vprime()
    sigma = ZRingElem.poly(SIGMA)
    assert ddx(v * v - sigma).is_zero(), "d/dx (v^2 - sigma) != 0"
    lhs = vp * vp * sigma.scale(4) - (ZRingElem.const(1) - sigma.scale(4))
    assert ddx(lhs).is_zero(), "d/dx ((v')^2 4 sigma - (1 - 4 sigma)) != 0"


def _ddy_finite_difference(deep: bool) -> None:
    ctx = make_ctx(digits_to_bits(WORK_DIGITS) + 32)
    z = ZRingElem.z()
    elems = [z, z * z, z * z * ZRingElem.v(),
             ZRingElem.monomial(SIGMA, z=3, jets={1: 1})]
    h = ctx.mpf(10) ** -20
    for x0 in ("0.3", "0.5", "0.7"):
        x0 = ctx.mpf(x0)
        for e in elems:
            # d/dy = (dx/dy) d/dx with dx/dy = -sigma z^2
            ev = ZRingEvaluator(ctx, x0)
            fplus = ZRingEvaluator(ctx, x0 + h)(e)
            fminus = ZRingEvaluator(ctx, x0 - h)(e)
            dy = _y_of_x(ctx, x0 + h) - _y_of_x(ctx, x0 - h)
            fd = (fplus - fminus) / dy
            got = ev(ddy(e))
            assert abs(got - fd) <= ctx.mpf(10) ** -30 * max(abs(got), 1), f"ddy({e}) at {x0}"


# -- numerics -------------------------------------------------------------

def _gamma_reflection(deep: bool) -> None:
    ctx = make_ctx(digits_to_bits(WORK_DIGITS) + 32)
    g = _gamma_quarter(ctx)
    assert abs(g * ctx.gamma(ctx.mpf(3) / 4) - ctx.sqrt(2) * ctx.pi) < ctx.mpf(10) ** -WORK_DIGITS


def _legendre_relation(deep: bool) -> None:
    ctx = make_ctx(digits_to_bits(WORK_DIGITS) + 32)
    for x in ("0.2", "0.5", "0.8"):
        x = ctx.mpf(x)
        k, e = _ellipke(ctx, x)
        kp, ep = _ellipke(ctx, 1 - x)
        assert abs(e * kp + ep * k - k * kp - ctx.pi / 2) < ctx.mpf(10) ** -WORK_DIGITS, f"x={x}"


def _y_symmetry(deep: bool) -> None:
    ctx = make_ctx(digits_to_bits(WORK_DIGITS) + 32)
    tol = ctx.mpf(10) ** -WORK_DIGITS
    assert abs(_y_of_x(ctx, ctx.mpf(1) / 2) - ctx.pi) < tol, "y(1/2) != pi"
    for x in ("0.1", "0.3", "0.45"):
        x = ctx.mpf(x)
        assert abs(_y_of_x(ctx, x) * _y_of_x(ctx, 1 - x) - ctx.pi ** 2) < tol, f"y(x) y(1-x) at {x}"


def _quadrature_spot(deep: bool) -> None:
    specs = [IntegralSpec(3, 1, "minus"), IntegralSpec(5, 1, "plus"), IntegralSpec(9, 2, "minus")]
    if deep:
        specs += [IntegralSpec(4 * p + 1, m, "plus") for m in range(1, 5) for p in range(m // 2, 6)]
    for spec in specs:
        _assert_quad_matches(spec)


def _assert_quad_matches(spec: IntegralSpec) -> None:
    exact = berndt_eval(spec)
    rep = quad_berndt(spec, digits_to_bits(WORK_DIGITS))
    mag = max(0, int(math.log10(abs(float(rep.value)) + 1)))
    want = eval_qxy(exact, digits_to_bits(WORK_DIGITS + mag + 10))
    ctx = make_ctx(digits_to_bits(WORK_DIGITS + mag + 10))
    diff = abs(ctx.mpf(rep.value) - want)
    assert diff < ctx.mpf(10) ** -TOL_DIGITS, f"{spec}: |exact - quad| = {float(diff):.3g}"


# -- hyperbolic_sums ------------------------------------------------------

def _fixtures(deep: bool) -> None:
    directory = fixtures.fixture_dir()
    for path in sorted(directory.glob("*.json")):
        family, _, s = path.stem.partition("_")
        try:
            fixtures.load_base(family, int(s), directory, check=True)
        except FixtureError as exc:
            raise FixtureError(f"{exc.path}: {exc}", exc.path) from exc


def _base_oracles(deep: bool) -> None:
    top = 12 if deep else 6
    ctx = make_ctx(digits_to_bits(WORK_DIGITS) + 32)
    tol = ctx.mpf(10) ** -TOL_DIGITS
    pairs = []
    for s in range(0, top + 1):
        pairs.append((SumFamily("Ctilde", 2 * s + 1, 1), ctilde_base(s)))
        if s:
            pairs.append((SumFamily("Cprime", 2 * s, 2), cprime_base(s)))
            pairs.append((SumFamily("Sbar", 2 * s + 1, 1), sbar_base(s)))
            pairs.append((SumFamily("S", 2 * s, 2), s2_base(s)))
    for x in (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)):
        ev = ZRingEvaluator(ctx, x)
        y = _y_of_x(ctx, ev.x)
        for fam, elem in pairs:
            want = sum_series_ctx(ctx, fam, y)
            got = ev(elem)
            assert abs(got - want) < tol * max(abs(want), 1), f"{fam} at x={x}"


def _membership(deep: bool) -> None:
    top = 12 if deep else 6
    for s in range(0, top + 1):
        assert base_shape("Ctilde", s).contains(ctilde_base(s)), f"Ctilde s={s}"
        if s:
            assert base_shape("Cprime", s).contains(cprime_base(s)), f"Cprime s={s}"
            assert base_shape("Sbar", s).contains(sbar_base(s)), f"Sbar s={s}"
            assert base_shape("S", s).contains(s2_base(s)), f"S s={s}"


def _sigma_criterion(deep: bool) -> None:
    for d in range(0, 9):
        f = SIGMA ** d
        assert f - f.reflect() == PolyX(), f"sigma^{d}"
        g = f * SIGMA_PRIME
        assert g + g.reflect() == PolyX(), f"sigma^{d} sigma'"


def legal_targets(max_m: int, max_index: int) -> list[SumFamily]:
    out = []
    for tag, (pp, mp) in (("Sbar", (1, 1)), ("Ctilde", (1, 1)), ("Cprime", (0, 0)), ("S", (0, 0))):
        for m in range(mp or 2, max_m + 1, 2):
            k = (m - 1) // 2 if m % 2 else (m - 2) // 2
            for p in range(pp, max_index + 1, 2):
                if p - 2 * k >= MIN_BASE_INDEX[tag]:
                    out.append(SumFamily(tag, p, m))
    return out


def _reduction(deep: bool) -> None:
    ctx = make_ctx(digits_to_bits(WORK_DIGITS) + 32)
    tol = ctx.mpf(10) ** -TOL_DIGITS
    ev = ZRingEvaluator(ctx, Fraction(1, 2))
    for fam in legal_targets(8 if deep else 6, 21 if deep else 13):
        want = sum_series_ctx(ctx, fam, ctx.pi)
        got = ev(reduced_element(fam))
        assert abs(got - want) < tol * max(abs(want), 1), f"{fam} at y=pi"


# -- contour --------------------------------------------------------------

def structure_grid(max_m: int, max_p: int, minus_extra: int) -> list[IntegralSpec]:
    """Plus: p in [m/2, max_p]; minus: a = 2m+1, 2m+5, ... <= 2m+1+minus_extra."""
    out = []
    for m in range(1, max_m + 1):
        out += [IntegralSpec(4 * p + 1, m, "plus") for p in range(m // 2, max_p + 1)]
        out += [IntegralSpec(a, m, "minus") for a in range(2 * m + 1, 2 * m + 2 + minus_extra, 4)]
    return out


def _structure(deep: bool) -> None:
    grid = structure_grid(8, 10, 4 * 10) if deep else [
        s for s in structure_grid(6, 8, 2 * 6 + 28) if s.sign == "plus" or s.a <= 4 * s.m + 29]
    for spec in grid:
        assert check_structure(berndt_eval(spec), spec), f"{spec} leaves its window"


def _prefactor(deep: bool) -> None:
    for m in range(1, 11):
        for a in range(1, 61):
            for sign in ("plus", "minus"):
                try:
                    spec = IntegralSpec(a, m, sign)
                except BerndtError:
                    continue
                c = prefactor(spec)
                if sign == "plus":
                    assert c == (-1) ** spec.p * Fraction(2) ** (m - 1 - 2 * spec.p), f"{spec}"


def _examples(deep: bool) -> None:
    for ex in EXAMPLES:
        got = berndt_eval(IntegralSpec(ex.a, ex.m, ex.sign))
        assert got == ex.expected_poly(), f"({ex.a},{ex.m},{ex.sign}) differs from the display"


def checks() -> list[Check]:
    return [
        Check("arith/triangle-inverse", _triangle_inverse),
        Check("arith/b-recurrence", _b_recurrence),
        Check("arith/diagonals", _diagonals),
        Check("arith/gamma-lm", _gamma_lm),
        Check("arith/bernoulli-recurrence", _bernoulli),
        Check("arith/sinh-derivatives", _sinh_derivatives),
        Check("elliptic_series/identities", _series_identities),
        Check("elliptic_series/pq-symmetry", _pq_symmetry),
        Check("zring/leibniz", _leibniz),
        Check("zring/reduction-soundness", _reduction_soundness),
        Check("zring/ddy-finite-difference", _ddy_finite_difference),
        Check("numerics/gamma-reflection", _gamma_reflection),
        Check("numerics/legendre-relation", _legendre_relation),
        Check("numerics/y-symmetry", _y_symmetry),
        Check("hyperbolic_sums/fixtures", _fixtures),
        Check("hyperbolic_sums/base-oracles", _base_oracles),
        Check("hyperbolic_sums/membership", _membership),
        Check("hyperbolic_sums/sigma-criterion", _sigma_criterion),
        Check("hyperbolic_sums/reduction", _reduction),
        Check("contour/prefactor", _prefactor),
        Check("contour/examples", _examples),
        Check("contour/structure-windows", _structure),
        Check("numerics/quadrature", _quadrature_spot),
    ]


def run(deep: bool = False, out=print) -> int:
    """Run every check; 0 when all pass, 1 at the first failure."""
    for check in checks():
        t0 = time.time()
        try:
            check.fn(deep)
        except (AssertionError, BerndtError, ArithmeticError) as exc:
            out(f"FAIL {check.name}: {exc}")
            return 1
        out(f"ok   {check.name} ({time.time() - t0:.1f}s)")
    return 0
