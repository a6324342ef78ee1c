"""Independent closed forms for the fitted bases, used only as test oracles.

    Sbar_{2s+1,1} = (-1)^(s+1) (2s)! / 2^(2s+2) * z^(2s+2) sigma [u^(2s)] sd(u)^2
    S_{2s,2}      = (-1)^(s+1) (2s-2)! / 2^(2s) * d/dy (z^(2s) [u^(2s)] (u/sn u)^2),  s >= 2
    S_{2,2}       = (1/12) d/dy ((1-2x) z^2 + 6 sigma z z')

The first follows from the Fourier series of the Jacobi zeta function and
nd^2 = 1 + x sd^2, the others from the Fourier series of ns^2.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..elliptic_series import sd_sq_coeffs, u_over_sn_sq_coeffs
from ..zring.poly import SIGMA, SIGMA_PRIME, RatFunX
from ..zring.ring import ZRingElem, ddy

__all__ = ["sbar_derived", "s2_derived"]


def sbar_derived(s: int) -> ZRingElem:
    coeff = Fraction((-1) ** (s + 1) * factorial(2 * s), 2 ** (2 * s + 2))
    poly = sd_sq_coeffs(2 * s + 1)[2 * s]
    return ZRingElem.monomial(RatFunX(SIGMA * poly * coeff), z=2 * s + 2)


def s2_derived(s: int) -> ZRingElem:
    if s == 1:
        inner = (ZRingElem.monomial(RatFunX(SIGMA_PRIME), z=2)
                 + ZRingElem.monomial(RatFunX(SIGMA * 6), z=1, jets={1: 1}))
        return ddy(inner).scale(Fraction(1, 12))
    coeff = Fraction((-1) ** (s + 1) * factorial(2 * s - 2), 2 ** (2 * s))
    poly = u_over_sn_sq_coeffs(2 * s + 1)[2 * s]
    return ddy(ZRingElem.monomial(RatFunX(poly * coeff), z=2 * s))
