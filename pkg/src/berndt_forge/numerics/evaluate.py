"""Numeric evaluation of exact objects: Q[X, Y] values, special values and
z-ring elements at a point x."""

from __future__ import annotations

from fractions import Fraction

from ..zring.ring import ZRingElem
from ..zring.special import QXYPoly, SpecialValue
from .core import GUARD_BITS, _convert, _gamma_quarter, _z_jets, make_ctx

__all__ = ["eval_qxy", "eval_special", "eval_zring", "eval_zring_ctx", "ZRingEvaluator"]


def _frac(ctx, c: Fraction):
    return ctx.mpf(c.numerator) / c.denominator


def eval_qxy(poly: QXYPoly, prec: int):
    """Substitute X = Gamma(1/4)^4 and Y = 1/pi."""
    ctx = make_ctx(prec + GUARD_BITS)
    g4 = _gamma_quarter(ctx) ** 4
    y = 1 / ctx.pi
    total = ctx.mpf(0)
    for (i, j), c in poly.items():
        total += _frac(ctx, c) * g4 ** i * y ** j
    return +make_ctx(prec).make_mpf(total._mpf_)


def eval_special(value: SpecialValue, prec: int):
    ctx = make_ctx(prec + GUARD_BITS)
    g = _gamma_quarter(ctx)
    root_pi = ctx.sqrt(ctx.pi)
    total = ctx.mpf(0)
    for (ge, te), c in value.items():
        total += _frac(ctx, c) * g ** ge * root_pi ** te
    return +make_ctx(prec).make_mpf(total._mpf_)


class ZRingEvaluator:
    """Caches x, v, v' and the z-jets at one point inside one context."""

    def __init__(self, ctx, x):
        self.ctx = ctx
        self.x = _convert(ctx, x)
        sigma = self.x * (1 - self.x)
        self.v = ctx.sqrt(sigma)
        self.vp = (1 - 2 * self.x) / (2 * self.v)
        self._jets: list = []

    def jet(self, j: int):
        if j >= len(self._jets):
            self._jets = _z_jets(self.ctx, self.x, max(j, 2 * len(self._jets), 4))
        return self._jets[j]

    def coeff(self, c):
        return c.eval_with(self.x, lambda q: _frac(self.ctx, Fraction(q)))

    def monomial(self, key):
        ev, evp, jets = key
        val = self.ctx.mpf(1)
        if ev:
            val *= self.v
        if evp:
            val *= self.vp
        for j, k in enumerate(jets):
            if k:
                val *= self.jet(j) ** k
        return val

    def __call__(self, e: ZRingElem):
        total = self.ctx.mpf(0)
        for key, c in e.items():
            total += self.coeff(c) * self.monomial(key)
        return total


def eval_zring_ctx(ctx, e: ZRingElem, x):
    return ZRingEvaluator(ctx, x)(e)


def eval_zring(e: ZRingElem, x, prec: int):
    """Numeric value of e at x in (0, 1)."""
    ctx = make_ctx(prec + GUARD_BITS + 4 * max(e.max_jet(), 0))
    val = eval_zring_ctx(ctx, e, x)
    return +make_ctx(prec).make_mpf(val._mpf_)
