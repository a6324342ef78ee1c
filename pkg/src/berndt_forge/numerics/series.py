"""Direct summation of the hyperbolic series with a certified geometric tail."""

from __future__ import annotations

from ..families import SumFamily
from .core import GUARD_BITS, _convert, make_ctx

__all__ = ["sum_series", "sum_series_ctx"]


def sum_series_ctx(ctx, family: SumFamily, y, extra_bits: int = 0):
    """Sum the family at y inside an existing context.

    Terms are bounded by 2^m |n|^p e^(-m n y) / (1 - e^(-2 n y))^m.  Once the
    ratio of consecutive bounds is <= 1/2 the remaining tail is at most twice
    the next bound, and we stop when that falls below 2^-(prec + extra_bits)
    times the size of the partial sums.
    """
    if y <= 0:
        raise ValueError("y must be positive")
    p, m = family.p, family.m
    eps = ctx.ldexp(1, -ctx.prec - extra_bits)
    ey = ctx.exp(-m * y)
    total = ctx.mpf(0)
    scale = ctx.mpf(0)
    n = 1
    while True:
        arg = (n - ctx.mpf(0.5)) if family.half_integer else ctx.mpf(n)
        h = ctx.cosh(arg * y) if family.uses_cosh else ctx.sinh(arg * y)
        term = arg ** p / h ** m
        if family.alternating and n % 2 == 0:
            term = -term
        total += term
        scale = max(scale, abs(term), abs(total))
        nxt = n + 1
        nb = (nxt - ctx.mpf(0.5)) if family.half_integer else ctx.mpf(nxt)
        bound = 2 ** m * nb ** p * ctx.exp(-m * nb * y) / (1 - ctx.exp(-2 * nb * y)) ** m
        ratio = ((nb + 1) / nb) ** max(p, 0) * ey
        if ratio <= 0.5 and 2 * bound <= eps * scale:
            return total
        n = nxt


def sum_series(family: SumFamily, y, prec: int):
    """Value of the family sum at y to prec bits."""
    ctx = make_ctx(prec + GUARD_BITS)
    val = sum_series_ctx(ctx, family, _convert(ctx, y))
    return +make_ctx(prec).make_mpf(val._mpf_)
