"""Per-call precision contexts, AGM constants and the elliptic functions
K, E, z = (2/pi) K and y = pi K'/K.

Every public function takes ``prec`` in bits and builds its own
``mpmath.MPContext``; no global precision is read or written.  Returned
values are mpf numbers of that private context.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from ..errors import DomainError
from ..zring.poly import PolyX, RatFunX

__all__ = [
    "make_ctx",
    "digits_to_bits",
    "bits_to_digits",
    "to_fraction",
    "agm",
    "gamma_quarter",
    "ellipk",
    "ellipe",
    "ellipke",
    "z_jet_numeric",
    "y_of_x",
]

GUARD_BITS = 24


def digits_to_bits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10)))


def bits_to_digits(bits: int) -> int:
    return int(bits * math.log10(2))


def make_ctx(prec: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def _convert(ctx, v):
    if isinstance(v, Fraction):
        return ctx.mpf(v.numerator) / v.denominator
    if hasattr(v, "_mpf_"):
        return ctx.make_mpf(v._mpf_)
    return ctx.mpf(v)


def to_fraction(v) -> Fraction:
    """Exact value of a finite binary float (mpf or float) as a Fraction."""
    if isinstance(v, float):
        return Fraction(v)
    sign, man, exp, _ = v._mpf_
    if not man:
        if exp:
            raise ValueError("infinite or nan value")
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** exp)
    return -val if sign else val


def _agm_steps(ctx, a, b):
    """(agm(a, b), number of iterations used)."""
    if a <= 0 or b <= 0:
        raise DomainError("agm needs positive arguments")
    tol = ctx.ldexp(1, -ctx.prec + 4)
    steps = 0
    while abs(a - b) > tol * a and steps < ctx.prec + 10:
        a, b = (a + b) / 2, ctx.sqrt(a * b)
        steps += 1
    return (a + b) / 2, steps


def _agm(ctx, a, b):
    return _agm_steps(ctx, a, b)[0]


def agm(a, b, prec: int):
    """Arithmetic-geometric mean of positive a, b."""
    ctx = make_ctx(prec + GUARD_BITS)
    val = _agm(ctx, _convert(ctx, a), _convert(ctx, b))
    out = make_ctx(prec)
    return +out.make_mpf(val._mpf_)


def _gamma_quarter(ctx):
    # Gamma(1/4)^2 = (2 pi)^(3/2) / agm(1, sqrt 2)
    return ctx.sqrt((2 * ctx.pi) ** ctx.mpf(1.5) / _agm(ctx, ctx.mpf(1), ctx.sqrt(2)))


def gamma_quarter(prec: int):
    """Gamma(1/4) from the lemniscatic AGM identity."""
    if prec < 64:
        raise ValueError("gamma_quarter needs prec >= 64 bits")
    ctx = make_ctx(prec + GUARD_BITS)
    val = _gamma_quarter(ctx)
    return +make_ctx(prec).make_mpf(val._mpf_)


def _check_x(x) -> None:
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x}")


def _ellipke(ctx, x):
    """K(x), E(x) for parameter x = k^2, via the AGM c-sequence."""
    a, b = ctx.mpf(1), ctx.sqrt(1 - x)
    c_sq = x
    acc = c_sq / 2
    tol = ctx.ldexp(1, -ctx.prec + 4)
    power = ctx.mpf(1)
    for _ in range(ctx.prec + 10):
        if abs(a - b) <= tol * a:
            break
        c = (a - b) / 2
        a, b = (a + b) / 2, ctx.sqrt(a * b)
        acc += power * c * c
        power *= 2
    k = ctx.pi / (2 * a)
    return k, k * (1 - acc)


def ellipke(x, prec: int):
    ctx = make_ctx(prec + GUARD_BITS)
    xv = _convert(ctx, x)
    _check_x(xv)
    k, e = _ellipke(ctx, xv)
    out = make_ctx(prec)
    return +out.make_mpf(k._mpf_), +out.make_mpf(e._mpf_)


def ellipk(x, prec: int):
    return ellipke(x, prec)[0]


def ellipe(x, prec: int):
    return ellipke(x, prec)[1]


_ONE_RF = RatFunX.const(1)
_ZERO_RF = RatFunX.const(0)
_X = PolyX.x()
_DK_K = RatFunX(PolyX([-1, 1]), PolyX([0, 2, -2]))   # K' = (E - (1-x) K) / (2 sigma)
_DK_E = RatFunX(PolyX.const(1), PolyX([0, 2, -2]))
_DE_K = RatFunX(PolyX.const(-1), PolyX([0, 2]))       # E' = (E - K) / (2x)
_DE_E = RatFunX(PolyX.const(1), PolyX([0, 2]))


@lru_cache(maxsize=None)
def _z_jet_symbolic(n: int) -> tuple[RatFunX, RatFunX]:
    """(a, b) with d^n/dx^n K = a K + b E."""
    if n == 0:
        return _ONE_RF, _ZERO_RF
    a, b = _z_jet_symbolic(n - 1)
    return (
        a.deriv() + a * _DK_K + b * _DE_K,
        b.deriv() + a * _DK_E + b * _DE_E,
    )


def _z_jets(ctx, x, n: int) -> list:
    k, e = _ellipke(ctx, x)
    scale = 2 / ctx.pi
    conv = lambda c: ctx.mpf(c.numerator) / c.denominator  # noqa: E731
    out = []
    for j in range(n + 1):
        a, b = _z_jet_symbolic(j)
        out.append(scale * (a.eval_with(x, conv) * k + b.eval_with(x, conv) * e))
    return out


def z_jet_numeric(x, n: int, prec: int):
    """n-th x-derivative of z = (2/pi) K(x)."""
    if n < 0:
        raise ValueError("jet order must be nonnegative")
    ctx = make_ctx(prec + GUARD_BITS + 4 * n)
    xv = _convert(ctx, x)
    _check_x(xv)
    val = _z_jets(ctx, xv, n)[n]
    return +make_ctx(prec).make_mpf(val._mpf_)


def _y_of_x(ctx, x):
    one = ctx.mpf(1)
    return ctx.pi * _agm(ctx, one, ctx.sqrt(1 - x)) / _agm(ctx, one, ctx.sqrt(x))


def y_of_x(x, prec: int):
    """y = pi K(1-x) / K(x); y(1/2) = pi."""
    ctx = make_ctx(prec + GUARD_BITS)
    xv = _convert(ctx, x)
    _check_x(xv)
    return +make_ctx(prec).make_mpf(_y_of_x(ctx, xv)._mpf_)
