"""Tail-bounded panel Gauss-Legendre quadrature of the Berndt integrands

    int_0^oo x^a / (cos x + sign cosh x)^m dx.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from mpmath.calculus.quadrature import GaussLegendre

from ..errors import SpecError
from .core import GUARD_BITS, make_ctx

__all__ = ["QuadratureReport", "quad_berndt", "integrand"]

SERIES_CUT = 0.125
PANEL_WIDTH = math.pi / 2
START_DEGREE = 4   # 3 * 2^(d-1) nodes: 24
MAX_DEGREE = 11


@dataclass(frozen=True)
class QuadratureReport:
    value: object
    tail_bound: object
    panels: int
    precision: int
    cutoff: object = None
    degree: int = 0


_node_lock = threading.Lock()
_node_cache: dict[tuple[int, int], list] = {}


def _nodes(ctx, degree: int):
    """Gauss-Legendre nodes on [-1, 1] cached as raw mpf tuples."""
    key = (degree, ctx.prec)
    with _node_lock:
        raw = _node_cache.get(key)
    if raw is None:
        builder = make_ctx(ctx.prec)
        pts = GaussLegendre(builder).calc_nodes(degree, ctx.prec)
        raw = [(x._mpf_, w._mpf_) for x, w in pts]
        with _node_lock:
            _node_cache[key] = raw
    return [(ctx.make_mpf(x), ctx.make_mpf(w)) for x, w in raw]


def _sign_of(spec) -> int:
    s = getattr(spec, "sign", spec)
    s = getattr(s, "value", s)
    if s in ("plus", "+", 1):
        return 1
    if s in ("minus", "-", -1):
        return -1
    raise SpecError(f"unknown sign {s!r}")


def _minus_unit(ctx, x):
    """(cosh x - cos x) / (2 x^2) = sum_j x^(4j) / (4j+2)!, positive series."""
    x4 = x ** 4
    term = ctx.mpf(1) / 2
    acc = term
    j = 0
    eps = ctx.ldexp(1, -ctx.prec - 4)
    while term > eps * acc:
        j += 1
        term = term * x4 / ((4 * j - 1) * (4 * j) * (4 * j + 1) * (4 * j + 2))
        acc += term
    return 2 * acc


def integrand(ctx, a: int, m: int, sign: int, x):
    if sign < 0 and x < SERIES_CUT:
        # cos x - cosh x = -x^2 u(x)
        if x == 0:
            return ctx.mpf(1) / (-_minus_unit(ctx, x)) ** m if a == 2 * m else ctx.mpf(0)
        return x ** (a - 2 * m) / (-_minus_unit(ctx, x)) ** m
    return x ** a / (ctx.cos(x) + sign * ctx.cosh(x)) ** m


def _tail_bound(ctx, a: int, m: int, t):
    """int_T^oo x^a (cosh x - 1)^-m dx <= (2 / (1-e^-T)^2)^m Gamma(a+1, mT) / m^(a+1)."""
    return (2 / (1 - ctx.exp(-t)) ** 2) ** m * ctx.gammainc(a + 1, m * t) / ctx.mpf(m) ** (a + 1)


def _choose_cutoff(ctx, a: int, m: int, tol):
    t = ctx.mpf(max(8, 2 * (a + 1) / m))
    while _tail_bound(ctx, a, m, t) >= tol:
        t *= ctx.mpf(1.25)
        if t > 10 ** 7:
            raise OverflowError("tail bound unattainable")
    return t


def _log10_peak(a: int, m: int) -> float:
    # x^a (2 e^-x)^m peaks near x = a / m
    if a == 0:
        return m * math.log10(2)
    xp = a / m
    return a * math.log10(xp) + m * math.log10(2) - m * xp / math.log(10)


def quad_berndt(spec, prec: int) -> QuadratureReport:
    """Integrate x^a / (cos x + sign cosh x)^m over (0, oo).

    ``prec`` is the requested absolute accuracy in bits.  The cutoff T is
    chosen so the analytic tail bound is below 2^-prec; each panel of width
    at most pi/2 is integrated with Gauss-Legendre of doubling degree until
    two consecutive degrees agree.
    """
    a, m, sign = int(spec.a), int(spec.m), _sign_of(spec)
    if a < 0 or m < 1:
        raise SpecError("need a >= 0 and m >= 1")
    if sign < 0 and a < 2 * m:
        raise SpecError("minus sign needs a >= 2m for convergence at 0")
    peak_bits = max(0, int(_log10_peak(a, m) * math.log2(10)))
    work = prec + GUARD_BITS + peak_bits + (8 * m if sign < 0 else 0)
    ctx = make_ctx(work)
    tol = ctx.ldexp(1, -prec)
    cutoff = _choose_cutoff(ctx, a, m, tol / 4)
    tail = _tail_bound(ctx, a, m, cutoff)

    edges = [ctx.mpf(0)]
    if sign < 0:
        edges.append(ctx.mpf(SERIES_CUT))
    n_panels = int(math.ceil(float(cutoff - edges[-1]) / PANEL_WIDTH))
    width = (cutoff - edges[-1]) / n_panels
    start = edges[-1]
    edges += [start + width * i for i in range(1, n_panels + 1)]
    panels = len(edges) - 1
    panel_tol = tol / (4 * panels)

    total = ctx.mpf(0)
    top_degree = START_DEGREE
    for lo, hi in zip(edges, edges[1:]):
        half = (hi - lo) / 2
        mid = (hi + lo) / 2
        prev = None
        degree = START_DEGREE
        while True:
            acc = ctx.mpf(0)
            for x, w in _nodes(ctx, degree):
                acc += w * integrand(ctx, a, m, sign, mid + half * x)
            acc *= half
            if prev is not None and abs(acc - prev) < panel_tol:
                break
            if degree >= MAX_DEGREE:
                raise ArithmeticError("Gauss-Legendre did not converge on a panel")
            prev = acc
            degree += 1
        top_degree = max(top_degree, degree)
        total += acc
    out = make_ctx(prec + peak_bits + 8)
    return QuadratureReport(
        value=+out.make_mpf(total._mpf_),
        tail_bound=+out.make_mpf(tail._mpf_),
        panels=panels,
        precision=prec,
        cutoff=+out.make_mpf(cutoff._mpf_),
        degree=top_degree,
    )
