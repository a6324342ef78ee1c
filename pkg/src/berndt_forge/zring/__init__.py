"""Symbolic z-calculus: polynomials in x, the differential ring, and exact
values at x = 1/2."""

from .poly import (
    ONE,
    SIGMA,
    SIGMA_PRIME,
    X,
    PolyX,
    RatFunX,
    poly_gcd,
    sigma_decompose,
    sigma_poly,
)
from .ring import ZRingElem, ddx, ddy, format_key, normalize
from .special import QXYPoly, SpecialValue, eval_at_half, to_qxy, zjet_at_half

__all__ = [
    "ONE", "SIGMA", "SIGMA_PRIME", "X", "PolyX", "RatFunX", "poly_gcd",
    "sigma_decompose", "sigma_poly", "ZRingElem", "ddx", "ddy", "format_key", "normalize",
    "QXYPoly", "SpecialValue", "eval_at_half", "to_qxy", "zjet_at_half",
]
