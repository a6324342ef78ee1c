"""Numerical screening of the conjectured values and spans.

Screening is evidence, never proof.  Orders covered by the contour engine
are checked exactly; the others (a = 1, or plus sign with p < [m/2]) are
integrated numerically and an integer relation between the value and the
conjectured basis is searched for with PSLQ.  The relation is found at half
the working precision and must then hold at the full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .contour import IntegralSpec, berndt_eval
from .errors import SpecError, StructureError
from .numerics.core import GUARD_BITS, _gamma_quarter, digits_to_bits, make_ctx
from .numerics.evaluate import eval_qxy
from .numerics.quad import quad_berndt
from .paper_examples import CONJECTURE_IDS, conjecture_support, x9m6_value
from .zring.special import QXYPoly, SpecialValue, to_qxy

__all__ = [
    "RawIntegral",
    "X9M6Report",
    "SupportVerdict",
    "check_x9m6",
    "check_support",
    "screen",
    "N_MAX",
]

N_MAX = 6
MAX_PSLQ_DIGITS = 1000


@dataclass(frozen=True)
class RawIntegral:
    """An (a, m, sign) triple without the validity rules of IntegralSpec."""

    a: int
    m: int
    sign: str


@dataclass
class X9M6Report:
    digits: int
    quad_value: str
    conjectured_value: str
    abs_diff: float
    agreement_digits: int
    tail_bound: float

    @property
    def passed(self) -> bool:
        return self.agreement_digits >= 40


@dataclass
class SupportVerdict:
    cid: str
    n: int
    parity: str
    a: int
    m: int
    method: str
    support: list[tuple[int, int]]
    in_span: bool
    # value as {(gamma exponent, pi exponent in the denominator): rational}
    value_terms: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    digits: int = 0
    detail: str = ""

    def value_poly(self) -> QXYPoly | None:
        total = SpecialValue()
        for (g, k), c in self.value_terms.items():
            total = total + SpecialValue.term(c, g, -2 * k)
        try:
            return to_qxy(total)
        except StructureError:
            return None


def _agreement(diff, ref) -> int:
    if not diff:
        return 10 ** 6
    scale = max(abs(float(ref)), 1.0)
    return max(0, int(-math.log10(float(diff) / scale)))


@lru_cache(maxsize=8)
def check_x9m6(digits: int = 60) -> X9M6Report:
    """Quadrature of x^9 / (cos x + cosh x)^6 against the conjectured constant."""
    rep = quad_berndt(RawIntegral(9, 6, "plus"), digits_to_bits(digits))
    want = eval_qxy(x9m6_value(), digits_to_bits(digits + 20))
    ctx = make_ctx(digits_to_bits(digits + 20))
    diff = abs(ctx.mpf(rep.value) - want)
    return X9M6Report(
        digits=digits,
        quad_value=ctx.nstr(rep.value, digits),
        conjectured_value=ctx.nstr(want, digits),
        abs_diff=float(diff),
        agreement_digits=min(_agreement(diff, want), digits),
        tail_bound=float(rep.tail_bound),
    )


def _exact_verdict(cid, n, parity, a, m, support) -> SupportVerdict | None:
    try:
        spec = IntegralSpec(a, m, "plus")
    except SpecError:
        return None
    poly = berndt_eval(spec)
    allowed = {(g // 4, k) for g, k in support if g >= 0 and g % 4 == 0}
    outside = [mono for mono in poly.monomials() if mono not in allowed]
    terms = {(4 * i, j): c for (i, j), c in poly.items()}
    detail = "exact value" + (f"; monomials outside the span: {outside}" if outside else "")
    return SupportVerdict(cid, n, parity, a, m, "exact", list(support), not outside, terms, 0, detail)


def _pslq_verdict(cid, n, parity, a, m, support, digits) -> SupportVerdict:
    d = max(digits, 60 + 15 * len(support))
    detail = "no relation found"
    while d <= MAX_PSLQ_DIGITS:
        rep = quad_berndt(RawIntegral(a, m, "plus"), digits_to_bits(d))
        ctx = make_ctx(digits_to_bits(d) + GUARD_BITS)
        gq = _gamma_quarter(ctx)
        vec = [ctx.mpf(rep.value)] + [gq ** g / ctx.pi ** k for g, k in support]
        rel = ctx.pslq(vec, tol=ctx.mpf(10) ** (-(d // 2)), maxcoeff=10 ** (d // 4),
                       maxsteps=10 ** 6)
        if rel is not None and rel[0] != 0:
            parts = [c * v for c, v in zip(rel, vec)]
            scale = max(abs(t) for t in parts)
            resid = abs(ctx.fsum(parts)) / scale
            if resid < ctx.mpf(10) ** (-(d - 20)):
                terms = {sk: Fraction(-c, rel[0]) for sk, c in zip(support, rel[1:]) if c}
                detail = (f"relation found at {d // 2} digits, residual {float(resid):.1e} "
                          f"at {d} digits")
                return SupportVerdict(cid, n, parity, a, m, "pslq", list(support), True,
                                      terms, d, detail)
            detail = f"relation at {d // 2} digits failed at {d} digits"
        d *= 2
    return SupportVerdict(cid, n, parity, a, m, "pslq", list(support), False, {}, d // 2, detail)


@lru_cache(maxsize=64)
def _check_support_cached(cid: str, n: int, digits: int) -> tuple[SupportVerdict, ...]:
    out = []
    for parity, (a, m, support) in conjecture_support(cid, n).items():
        verdict = _exact_verdict(cid, n, parity, a, m, support)
        if verdict is None:
            verdict = _pslq_verdict(cid, n, parity, a, m, support, digits)
        out.append(verdict)
    return tuple(out)


def check_support(cid: str, n: int, digits: int = 60) -> list[SupportVerdict]:
    """Verdicts for the odd order 2n-1 and the even order 2n."""
    if cid not in ("plus-x1", "plus-x5"):
        raise ValueError(f"{cid!r} is not a structural conjecture")
    return list(_check_support_cached(cid, n, digits))


def screen(cid: str, n_max: int = 2, digits: int = 60):
    if cid not in CONJECTURE_IDS:
        raise ValueError(f"unknown conjecture {cid!r}")
    if cid == "x9m6":
        return check_x9m6(digits)
    if not 1 <= n_max <= N_MAX:
        raise ValueError(f"n-max must be in 1..{N_MAX}")
    out = []
    for n in range(1, n_max + 1):
        out.extend(check_support(cid, n, digits))
    return out
