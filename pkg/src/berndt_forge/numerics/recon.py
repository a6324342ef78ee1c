"""Rational reconstruction from high-precision floats."""

from __future__ import annotations

from fractions import Fraction

from .core import to_fraction

__all__ = ["rational_reconstruct"]


def rational_reconstruct(v, denom_bound: int, digits: int) -> Fraction | None:
    """Smallest-denominator continued-fraction convergent of v with
    denominator <= denom_bound and |v - p/q| < 10^-(digits/2) * max(1, |v|).

    ``digits`` is the number of correct decimal digits carried by v.
    Returns None when no convergent qualifies.
    """
    exact = to_fraction(v)
    tol = Fraction(1, 10 ** max(1, digits // 2))
    scale = max(1, abs(exact))
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    rest = exact
    while True:
        a = rest.numerator // rest.denominator
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > denom_bound:
            return None
        cand = Fraction(h1, k1)
        if abs(cand - exact) < tol * scale:
            return cand
        frac = rest - a
        if not frac:
            return None
        rest = 1 / frac
