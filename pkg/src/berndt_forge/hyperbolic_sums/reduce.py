"""Reduction of power-m sums to derivatives of the power-1 / power-2 bases."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..arith import triangle
from ..errors import DomainError
from ..families import SumFamily
from ..zring.ring import ZRingElem, ddy
from .bases import base_element

__all__ = ["reduce_power", "reduced_element", "MIN_BASE_INDEX"]

# smallest index with a base closed form
MIN_BASE_INDEX = {"Sbar": 3, "Ctilde": 1, "Cprime": 2, "S": 2}

_TRIANGLE = {"Sbar": "B", "Ctilde": "Btilde", "S": "D", "Cprime": "Dtilde"}


def reduce_power(target: SumFamily) -> list[tuple[int, int, Fraction]]:
    """[(derivative order 2j, base index p - 2j, coefficient)] with

        target = sum_j coeff_j * d^(2j)/dy^(2j) base(p - 2j).

    Coefficients are row k of the inverse triangle, m = 2k+1 or 2k+2.
    """
    if not isinstance(target, SumFamily):
        raise DomainError("reduce_power expects a SumFamily")
    tag, p, m = target.tag, target.p, target.m
    k = (m - 1) // 2 if m % 2 else (m - 2) // 2
    lowest = p - 2 * k
    if lowest < MIN_BASE_INDEX[tag]:
        raise DomainError(
            f"{target}: lowest base index {lowest} is below {MIN_BASE_INDEX[tag]}")
    row = triangle(_TRIANGLE[tag], k).inverse_row(k)
    return [(2 * j, p - 2 * j, row[j]) for j in range(k + 1) if row[j]]


@lru_cache(maxsize=None)
def _ddy_power(tag: str, p: int, order: int) -> ZRingElem:
    if order == 0:
        return base_element(tag, p)
    return ddy(_ddy_power(tag, p, order - 1))


def reduced_element(target: SumFamily, extra_derivs: int = 0) -> ZRingElem:
    """d^extra/dy^extra of the target sum as an explicit z-ring element."""
    total = ZRingElem()
    for order, idx, coeff in reduce_power(target):
        total = total + _ddy_power(target.tag, idx, order + extra_derivs).scale(coeff)
    return total
