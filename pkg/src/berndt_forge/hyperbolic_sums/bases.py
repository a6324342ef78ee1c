"""Closed forms of the four base families as z-ring elements.

Ctilde_{2s+1,1} and Cprime_{2s,2} come from the sd and u*ds expansions.
Sbar_{2s+1,1} and S_{2s,2} are fitted to their membership shapes and
frozen as fixtures (see ``fixtures``).
"""

from __future__ import annotations

import threading
from fractions import Fraction

from ..elliptic_series import p_poly, q_poly
from ..errors import DomainError, FitError
from ..families import SumFamily
from ..zring.poly import SIGMA, RatFunX
from ..zring.ring import ZRingElem
from .ansatz import AnsatzShape, Template, default_start_degree, fit_ansatz

__all__ = [
    "ctilde_base",
    "cprime_base",
    "sbar_base",
    "s2_base",
    "ctilde_shape",
    "cprime_shape",
    "sbar_shape",
    "s2_shape",
    "base_shape",
    "fit_sbar",
    "fit_s2",
    "base_element",
    "MAX_DEGREE_GROWTH",
]

MAX_DEGREE_GROWTH = 6


def ctilde_base(s: int) -> ZRingElem:
    """Ctilde_{2s+1,1} = (-1)^s / 2^(2s+2) z^(2s+2) p_{2s+1}(x) v."""
    if s < 0:
        raise DomainError("ctilde_base needs s >= 0")
    c = Fraction((-1) ** s, 2 ** (2 * s + 2))
    return ZRingElem.monomial(RatFunX(p_poly(2 * s + 1) * c), z=2 * s + 2, v=1)


def cprime_base(s: int) -> ZRingElem:
    """Cprime_{2s,2} = (-1)^s / (2^(2s+1) s) sigma z^(2s+1) (z q'_{2s} + 2s z' q_{2s})."""
    if s < 1:
        raise DomainError("cprime_base needs s >= 1")
    c = Fraction((-1) ** s, 2 ** (2 * s + 1) * s)
    q = q_poly(2 * s)
    first = ZRingElem.monomial(RatFunX(SIGMA * q.deriv() * c), z=2 * s + 2)
    second = ZRingElem.monomial(RatFunX(SIGMA * q * (c * 2 * s)), z=2 * s + 1, jets={1: 1})
    return first + second


def ctilde_shape(s: int, degree: int = 0) -> AnsatzShape:
    """Ctilde_{2s+1,1} in z^(2s+2) Q[sigma] v, times sigma' when s is odd."""
    return AnsatzShape((Template(2 * s + 2, (), degree, s % 2, 1),))


def cprime_shape(s: int, degree: int = 0) -> AnsatzShape:
    """Cprime_{2s,2}: the sigma' factor sits on the z^(2s+2) term for even s
    and on the z^(2s+1) z' term for odd s."""
    return AnsatzShape((
        Template(2 * s + 2, (), degree, 1 - s % 2),
        Template(2 * s + 1, ((1, 1),), degree, s % 2),
    ))


def sbar_shape(s: int, degree: int | None = None) -> AnsatzShape:
    """Sbar_{2s+1,1} in z^(2s+2) Q[sigma], times sigma' when s is even."""
    if s < 1:
        raise DomainError("sbar_base needs s >= 1")
    d = default_start_degree(s) if degree is None else degree
    return AnsatzShape((Template(2 * s + 2, (), d, 1 if s % 2 == 0 else 0),))


def s2_shape(s: int, degree: int | None = None) -> AnsatzShape:
    """Membership shape of S_{2s,2}."""
    if s < 1:
        raise DomainError("s2_base needs s >= 1")
    d = default_start_degree(s) if degree is None else degree
    if s == 1:
        return AnsatzShape((
            Template(4, (), d, 0),
            Template(3, ((1, 1),), d, 1),
            Template(2, ((1, 2),), d, 0),
        ))
    if s % 2:
        return AnsatzShape((
            Template(2 * s + 2, (), d, 0),
            Template(2 * s + 1, ((1, 1),), d, 1),
        ))
    return AnsatzShape((
        Template(2 * s + 2, (), d, 1),
        Template(2 * s + 1, ((1, 1),), d, 0),
    ))


def base_shape(tag: str, s: int) -> AnsatzShape:
    """Membership shape of the base with parameter s (any sigma degree)."""
    shapes = {"Ctilde": ctilde_shape, "Cprime": cprime_shape, "Sbar": sbar_shape, "S": s2_shape}
    if tag not in shapes:
        raise DomainError(f"unknown family {tag!r}")
    return shapes[tag](s, 0)


def _fit_growing(shape_fn, s: int, family: SumFamily, **kw):
    last: FitError | None = None
    for extra in range(MAX_DEGREE_GROWTH):
        shape = shape_fn(s, default_start_degree(s) + extra)
        try:
            return fit_ansatz(shape, family, **kw)
        except FitError as exc:
            last = exc
    assert last is not None
    raise last


def fit_sbar(s: int, **kw):
    return _fit_growing(sbar_shape, s, SumFamily("Sbar", 2 * s + 1, 1), **kw)


def fit_s2(s: int, **kw):
    return _fit_growing(s2_shape, s, SumFamily("S", 2 * s, 2), **kw)


_lock = threading.Lock()
_fitted: dict[tuple[str, int], ZRingElem] = {}


def _fitted_base(family: str, s: int) -> ZRingElem:
    from . import fixtures

    key = (family, s)
    with _lock:
        hit = _fitted.get(key)
    if hit is not None:
        return hit
    elem = fixtures.load_base(family, s)
    if elem is None:
        fit = fit_sbar(s) if family == "Sbar" else fit_s2(s)
        elem = fit.element
    with _lock:
        _fitted.setdefault(key, elem)
        return _fitted[key]


def sbar_base(s: int) -> ZRingElem:
    """Sbar_{2s+1,1}, from the frozen fixture or a fresh certified fit."""
    if s < 1:
        raise DomainError("sbar_base needs s >= 1")
    return _fitted_base("Sbar", s)


def s2_base(s: int) -> ZRingElem:
    """S_{2s,2}, from the frozen fixture or a fresh certified fit."""
    if s < 1:
        raise DomainError("s2_base needs s >= 1")
    return _fitted_base("S", s)


def clear_cache() -> None:
    with _lock:
        _fitted.clear()


def base_element(tag: str, p: int) -> ZRingElem:
    """Base sum of family ``tag`` at index p (power 1 or 2)."""
    if tag == "Ctilde":
        if p < 1 or p % 2 == 0:
            raise DomainError(f"Ctilde base index must be odd and >= 1, got {p}")
        return ctilde_base((p - 1) // 2)
    if tag == "Sbar":
        if p < 3 or p % 2 == 0:
            raise DomainError(f"Sbar base index must be odd and >= 3, got {p}")
        return sbar_base((p - 1) // 2)
    if tag == "Cprime":
        if p < 2 or p % 2:
            raise DomainError(f"Cprime base index must be even and >= 2, got {p}")
        return cprime_base(p // 2)
    if tag == "S":
        if p < 2 or p % 2:
            raise DomainError(f"S base index must be even and >= 2, got {p}")
        return s2_base(p // 2)
    raise DomainError(f"unknown family {tag!r}")
