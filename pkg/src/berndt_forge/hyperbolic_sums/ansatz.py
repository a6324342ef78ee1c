"""Ansatz shapes and the certified numeric fitter for base sums."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import FitError
from ..families import SumFamily
from ..numerics.core import _convert, _y_of_x, digits_to_bits, make_ctx
from ..numerics.evaluate import ZRingEvaluator
from ..numerics.recon import rational_reconstruct
from ..numerics.series import sum_series_ctx
from ..zring.poly import ONE, SIGMA, SIGMA_PRIME, PolyX, sigma_decompose
from ..zring.ring import ZRingElem

__all__ = [
    "Template",
    "AnsatzShape",
    "fit_ansatz",
    "sample_points",
    "FitResult",
    "DENOM_BOUND",
    "CERT_DIGITS",
    "START_DIGITS",
]

DENOM_BOUND = 10 ** 30
CERT_DIGITS = 80
START_DIGITS = 120
MAX_DIGITS = 1200
MAX_DIM = 64


@dataclass(frozen=True)
class Template:
    """z^z_exp * prod (z^(j))^e * sigma'^sigma_prime * v^v_factor * Q_d[sigma]."""

    z_exp: int
    jets: tuple[tuple[int, int], ...] = ()
    sigma_deg: int = 0
    sigma_prime: int = 0
    v_factor: int = 0

    def monomial(self) -> ZRingElem:
        coeff = SIGMA_PRIME if self.sigma_prime else PolyX.const(1)
        return ZRingElem.monomial(coeff, z=self.z_exp, jets=dict(self.jets), v=self.v_factor)

    def with_degree(self, d: int) -> "Template":
        return Template(self.z_exp, self.jets, d, self.sigma_prime, self.v_factor)

    def describe(self) -> str:
        parts = [f"z^{self.z_exp}"]
        for j, e in self.jets:
            parts.append(f"z^({j})" + (f"^{e}" if e > 1 else ""))
        if self.sigma_prime:
            parts.append("sigma'")
        if self.v_factor:
            parts.append("v")
        return "*".join(parts) + f"*Q_{self.sigma_deg}[sigma]"


@dataclass(frozen=True)
class AnsatzShape:
    templates: tuple[Template, ...]

    @property
    def dimension(self) -> int:
        return sum(t.sigma_deg + 1 for t in self.templates)

    def basis(self) -> list[ZRingElem]:
        out = []
        for t in self.templates:
            mono = t.monomial()
            for d in range(t.sigma_deg + 1):
                out.append(mono * (SIGMA ** d))
        return out

    def build(self, coeffs: Sequence[Fraction]) -> ZRingElem:
        total = ZRingElem()
        for c, b in zip(coeffs, self.basis()):
            if c:
                total = total + b.scale(Fraction(c))
        return total

    def contains(self, e: ZRingElem) -> bool:
        """True when e lies in the span of the templates for some sigma
        degree: each monomial key matches a template and its coefficient is
        in Q[sigma] (or Q[sigma] sigma' when the template carries sigma')."""
        by_key = {next(iter(t.monomial().terms)): t for t in self.templates}
        for key, c in e.items():
            t = by_key.get(key)
            if t is None or c.den != ONE:
                return False
            dec = sigma_decompose(c.num)
            if dec is None or dec[0] != ("odd" if t.sigma_prime else "even"):
                return False
        return True

    def grown(self, step: int = 1) -> "AnsatzShape":
        return AnsatzShape(tuple(t.with_degree(t.sigma_deg + step) for t in self.templates))

    def describe(self) -> str:
        return " + ".join(t.describe() for t in self.templates)


@dataclass
class FitResult:
    element: ZRingElem
    coeffs: list[Fraction]
    shape: AnsatzShape
    digits: int
    fit_points: list[Fraction]
    held_out: list[Fraction]
    max_rel_residual: float = field(default=0.0)


def sample_points(count: int) -> list[Fraction]:
    """Deterministic rationals in (0.1, 0.9) with small denominators.

    Skips 1/2 and never takes both x and 1 - x: the pair shares sigma, so
    single-template rows would be proportional.
    """
    seen: set[Fraction] = set()
    out: list[Fraction] = []
    den = 7
    while len(out) < count:
        for num in range(1, den):
            x = Fraction(num, den)
            if (Fraction(1, 10) < x < Fraction(9, 10) and x != Fraction(1, 2)
                    and x not in seen and 1 - x not in seen):
                seen.add(x)
                out.append(x)
        den += 1
    # smallest denominators first
    out.sort(key=lambda f: (f.denominator, f))
    return out[:count]


def _evaluate_rows(ctx, shape: AnsatzShape, target: SumFamily, points):
    basis = shape.basis()
    rows, rhs = [], []
    for x in points:
        ev = ZRingEvaluator(ctx, x)
        y = _y_of_x(ctx, ev.x)
        rhs.append(sum_series_ctx(ctx, target, y, extra_bits=8))
        rows.append([ev(b) for b in basis])
    return rows, rhs


def _solve(ctx, rows, rhs):
    scaled_rows, scaled_rhs = [], []
    for row, r in zip(rows, rhs):
        s = max(abs(v) for v in row) or ctx.mpf(1)
        scaled_rows.append([v / s for v in row])
        scaled_rhs.append(r / s)
    a = ctx.matrix(scaled_rows)
    b = ctx.matrix(scaled_rhs)
    sol = ctx.lu_solve(a, b)
    return [sol[i] for i in range(len(scaled_rows))]


def _agreement_digits(ctx, c1, c2) -> int:
    worst = None
    for u, v in zip(c1, c2):
        diff = abs(u - v)
        if not diff:
            continue
        rel = diff / max(abs(v), ctx.mpf(1))
        d = -float(ctx.log10(rel))
        worst = d if worst is None else min(worst, d)
    if worst is None:
        return ctx.dps
    return max(0, int(worst))


def fit_ansatz(shape: AnsatzShape, target: SumFamily, *, start_digits: int = START_DIGITS,
               max_digits: int = MAX_DIGITS, denom_bound: int = DENOM_BOUND,
               cert_digits: int = CERT_DIGITS) -> FitResult:
    """Fit the exact element of ``shape`` equal to the target sum.

    Solves a square system at dim sample points, reconstructs rationals,
    and certifies at held-out points.  Precision grows until both the
    reconstruction and the certification succeed or ``max_digits`` is hit.
    """
    dim = shape.dimension
    if dim > MAX_DIM:
        raise FitError(f"shape dimension {dim} exceeds {MAX_DIM}", {"dimension": dim})
    n_points = max(2 * dim, dim + 3)
    points = sample_points(n_points)
    fit_pts, held = points[:dim], points[dim:]
    digits = start_digits
    diagnostics: dict = {"dimension": dim, "shape": shape.describe(), "target": str(target)}
    while digits <= max_digits:
        ctx = make_ctx(digits_to_bits(digits) + 64)
        rows, rhs = _evaluate_rows(ctx, shape, target, fit_pts)
        try:
            sol_hi = _solve(ctx, rows, rhs)
        except ZeroDivisionError as exc:
            raise FitError("singular ansatz system", diagnostics) from exc
        low = make_ctx(digits_to_bits(digits))
        sol_lo = _solve(low, [[low.make_mpf(v._mpf_) for v in r] for r in rows],
                        [low.make_mpf(v._mpf_) for v in rhs])
        good = _agreement_digits(ctx, sol_lo, sol_hi)
        diagnostics.update(digits=digits, stable_digits=good)
        coeffs = [rational_reconstruct(c, denom_bound, good) for c in sol_hi] if good >= 20 else None
        if coeffs is not None and all(c is not None for c in coeffs):
            candidate = shape.build(coeffs)
            ok, worst = _certify(candidate, target, held, max(digits, cert_digits + 40), cert_digits)
            diagnostics["max_rel_residual"] = worst
            if ok:
                return FitResult(candidate, coeffs, shape, digits, fit_pts, held, worst)
            if good >= digits - 10:
                # reconstruction was stable yet wrong: the shape itself is wrong
                raise FitError("certification failed at held-out points", diagnostics)
        digits = int(digits * 1.5)
    raise FitError("rational reconstruction did not stabilise", diagnostics)


def _certify(candidate: ZRingElem, target: SumFamily, points, digits: int, cert_digits: int):
    ctx = make_ctx(digits_to_bits(digits) + 32)
    tol = ctx.mpf(10) ** (-cert_digits)
    worst = 0.0
    for x in points:
        ev = ZRingEvaluator(ctx, x)
        y = _y_of_x(ctx, _convert(ctx, x))
        want = sum_series_ctx(ctx, target, y, extra_bits=8)
        got = ev(candidate)
        rel = abs(got - want) / max(abs(want), ctx.mpf(1))
        worst = max(worst, float(rel)) if rel else worst
        if rel > tol:
            return False, float(rel)
    return True, worst


def default_start_degree(s: int) -> int:
    return math.ceil(s / 2) + 1
