"""Exact evaluation of int_0^oo x^a / (cos x + sign cosh x)^m dx.

The contour identities express a Gaussian-rational multiple of the integral
as a finite combination of pi-powers times y-derivatives of power-m
hyperbolic sums at y = pi.  Those sums reduce to base sums, whose closed
forms live in the z-ring; evaluating at x = 1/2 lands in Q[X, Y].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .arith import gamma_lm
from .errors import SpecError
from .families import SumFamily
from .hyperbolic_sums.reduce import reduced_element
from .zring.ring import ZRingElem
from .zring.special import QXYPoly, SpecialValue, eval_at_half, to_qxy

__all__ = [
    "IntegralSpec",
    "StructureWindow",
    "prefactor",
    "rhs_assembly",
    "berndt_eval",
    "structure_window",
    "check_structure",
    "SIGNS",
]

SIGNS = ("plus", "minus")


@dataclass(frozen=True)
class IntegralSpec:
    a: int
    m: int
    sign: str

    def __post_init__(self):
        if self.sign not in SIGNS:
            raise SpecError(f"sign must be 'plus' or 'minus', got {self.sign!r}")
        if self.m < 1:
            raise SpecError(f"m must be positive, got {self.m}")
        if self.a < 1:
            raise SpecError(f"a must be positive, got {self.a}")
        if self.sign == "plus":
            if self.a % 4 != 1:
                raise SpecError(f"plus sign needs a = 4p+1, got a = {self.a} (a mod 4 = {self.a % 4})")
            if self.p < self.m // 2:
                raise SpecError(f"plus sign needs p >= [m/2]: p = {self.p}, [m/2] = {self.m // 2}")
        else:
            if self.a < 2 * self.m:
                raise SpecError(f"minus sign needs a >= 2m: a = {self.a}, 2m = {2 * self.m}")
            if (self.a - 2 * self.m) % 4 != 1:
                raise SpecError(
                    f"minus sign needs a - 2m = 1 mod 4: a - 2m = {self.a - 2 * self.m}")

    @property
    def p(self) -> int:
        """(a - 1) / 4 for the plus sign."""
        return (self.a - 1) // 4

    def __str__(self) -> str:
        return f"(a={self.a}, m={self.m}, {self.sign})"


@dataclass(frozen=True)
class StructureWindow:
    x_min: int
    x_max: int
    x_parity: int
    y_min: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError("empty structure window")

    def contains(self, i: int, j: int) -> bool:
        return (self.x_min <= i <= self.x_max and i % 2 == self.x_parity
                and self.y_min <= j <= self.y_max)


# Gaussian rationals as (re, im) pairs of Fractions
def _gmul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gpow(u, n: int):
    out = (Fraction(1), Fraction(0))
    for _ in range(n):
        out = _gmul(out, u)
    return out


def _gdiv(u, v):
    den = v[0] * v[0] + v[1] * v[1]
    num = _gmul(u, (v[0], -v[1]))
    return (num[0] / den, num[1] / den)


_I = (Fraction(0), Fraction(1))
_ONE_PLUS_I = (Fraction(1), Fraction(1))


def prefactor(spec: IntegralSpec) -> Fraction:
    """Constant multiplying the integral on the left of the contour identity.

    plus:  2^(m-2) (1 - i^(a+1)) / (1+i)^(a-1)
    minus: 2^(m-2) (1 - (-1)^m i^(a+1)) / (i^m (1+i)^(a-1))
    """
    a, m = spec.a, spec.m
    ia1 = _gpow(_I, a + 1)
    if spec.sign == "plus":
        num = (1 - ia1[0], -ia1[1])
        den = _gpow(_ONE_PLUS_I, a - 1)
    else:
        s = (-1) ** m
        num = (1 - s * ia1[0], -s * ia1[1])
        den = _gmul(_gpow(_I, m), _gpow(_ONE_PLUS_I, a - 1))
    re, im = _gdiv(num, den)
    re *= Fraction(2) ** (m - 2)
    im *= Fraction(2) ** (m - 2)
    if im or not re:
        raise SpecError(f"prefactor of {spec} is {re} + {im}i, not a nonzero rational")
    return re


def _family_sum(spec: IntegralSpec, power_index: int) -> tuple[int, SumFamily]:
    """sum (-1)^(mn) (.)^P / (cosh or sinh)^m as (sign, family)."""
    m = spec.m
    if spec.sign == "plus":
        tag = "Ctilde" if m % 2 else "Cprime"
    else:
        tag = "Sbar" if m % 2 else "S"
    # (-1)^(mn) = -(-1)^(n-1) for odd m, 1 for even m
    return (-1 if m % 2 else 1), SumFamily(tag, power_index, m)


def rhs_assembly(spec: IntegralSpec) -> dict[int, ZRingElem]:
    """Right side of the contour identity as {pi exponent: z-ring element}."""
    a, m = spec.a, spec.m
    out: dict[int, ZRingElem] = {}
    for l in range((m - 1) // 2 + 1):
        gl = gamma_lm(l, m)
        sgn, fam = _family_sum(spec, a + 1 + 2 * l - m)
        for j in range(m - 2 * l):
            order = m - 1 - 2 * l - j
            coeff = Fraction((-1) ** (l + 1) * 2 ** l * comb(a, j) * sgn) * gl / factorial(order)
            if not coeff:
                continue
            elem = reduced_element(fam, extra_derivs=order).scale(coeff)
            pi_exp = a + 1 - j
            out[pi_exp] = out[pi_exp] + elem if pi_exp in out else elem
    return out


@lru_cache(maxsize=512)
def _berndt_eval_cached(spec: IntegralSpec) -> QXYPoly:
    total = SpecialValue()
    for pi_exp, elem in rhs_assembly(spec).items():
        total = total + eval_at_half(elem).times_pi(pi_exp)
    return to_qxy(total * (1 / prefactor(spec)))


def berndt_eval(spec: IntegralSpec) -> QXYPoly:
    """Exact value of the integral as a polynomial in X = Gamma(1/4)^4, Y = 1/pi."""
    return _berndt_eval_cached(spec)


def structure_window(spec: IntegralSpec) -> StructureWindow:
    a, m = spec.a, spec.m
    if spec.sign == "plus":
        p = spec.p
        return StructureWindow(2 * p - m + 2, 2 * p + m, m % 2, 2 * p - m + 2, 2 * p + 3 * m - 2)
    return StructureWindow((a + 3) // 2 - m, (a - 1) // 2 + m, 0, (a + 3) // 2 - m, (a - 5) // 2 + 3 * m)


def check_structure(poly: QXYPoly, spec: IntegralSpec) -> bool:
    win = structure_window(spec)
    return all(win.contains(i, j) for i, j in poly.monomials())
