"""Exact special values at x = 1/2 and the X = Gamma(1/4)^4, Y = 1/pi basis."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from ..errors import MalformedElementError, StructureError
from .ring import ZRingElem

__all__ = ["SpecialValue", "QXYPoly", "zjet_at_half", "eval_at_half", "to_qxy"]

HALF = Fraction(1, 2)


class SpecialValue:
    """Finite sum of c * Gamma(1/4)^g * pi^(t/2); keys are (g, t)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def term(cls, coeff, g_exp: int, two_pi_exp: int) -> "SpecialValue":
        return cls({(g_exp, two_pi_exp): Fraction(coeff)})

    @classmethod
    def rational(cls, c) -> "SpecialValue":
        return cls({(0, 0): Fraction(c)})

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(sorted(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpecialValue):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        inner = ", ".join(f"({g},{t}): {c}" for (g, t), c in self.items())
        return f"SpecialValue({{{inner}}})"

    def __add__(self, other: "SpecialValue") -> "SpecialValue":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SpecialValue(out)

    def __neg__(self) -> "SpecialValue":
        return SpecialValue({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SpecialValue") -> "SpecialValue":
        return self + (-other)

    def __mul__(self, other) -> "SpecialValue":
        if isinstance(other, (int, Fraction)):
            return SpecialValue({k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for (g1, t1), c1 in self.terms.items():
            for (g2, t2), c2 in other.terms.items():
                k = (g1 + g2, t1 + t2)
                out[k] = out.get(k, 0) + c1 * c2
        return SpecialValue(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SpecialValue":
        out = SpecialValue.rational(1)
        for _ in range(n):
            out = out * self
        return out

    def times_pi(self, exponent: int) -> "SpecialValue":
        """Multiply by pi^exponent (integer exponent)."""
        return SpecialValue({(g, t + 2 * exponent): c for (g, t), c in self.terms.items()})

    def evaluate(self, gamma_quarter, pi):
        """Numeric value given numeric Gamma(1/4) and pi (any field type)."""
        total = 0
        root_pi = pi ** HALF if not hasattr(pi, "sqrt") else pi.sqrt()
        for (g, t), c in self.terms.items():
            val = gamma_quarter ** g * pi ** (t // 2)
            if t % 2:
                val = val * root_pi
            total = total + val * c.numerator / c.denominator
        return total


def _pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


@lru_cache(maxsize=None)
def zjet_at_half(n: int) -> SpecialValue:
    """Exact z^(n)(1/2) = (1/2)_n^2 sqrt(pi) / Gamma(n/2 + 3/4)^2."""
    if n < 0:
        raise ValueError("jet order must be nonnegative")
    top = _pochhammer(HALF, n) ** 2
    r, odd = divmod(n, 2)
    if odd:
        # Gamma(r + 5/4) = (5/4)_r Gamma(1/4) / 4
        c = top * 16 / _pochhammer(Fraction(5, 4), r) ** 2
        return SpecialValue.term(c, -2, 1)
    # Gamma(r + 3/4) = (3/4)_r Gamma(3/4),  Gamma(3/4)^2 = 2 pi^2 / Gamma(1/4)^2
    c = top / (2 * _pochhammer(Fraction(3, 4), r) ** 2)
    return SpecialValue.term(c, 2, -3)


def eval_at_half(e: ZRingElem) -> SpecialValue:
    """Substitute x = 1/2, v = 1/2, v' = 0 and the exact jet values."""
    total = SpecialValue()
    for (ev, evp, jets), coeff in e.items():
        if evp:
            continue
        try:
            c = coeff(HALF)
        except ZeroDivisionError as exc:
            raise MalformedElementError(str(exc)) from exc
        if not c:
            continue
        if ev:
            c = c * HALF
        val = SpecialValue.rational(c)
        for j, k in enumerate(jets):
            if k:
                val = val * zjet_at_half(j) ** k
        total = total + val
    return total


class QXYPoly:
    """Polynomial sum c * X^i * Y^j with X = Gamma(1/4)^4, Y = 1/pi."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if i < 0:
                raise StructureError(f"negative X degree {i}")
            clean[(int(i), int(j))] = c
        self.terms = clean

    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self.terms.items())

    def monomials(self) -> list[tuple[int, int]]:
        return sorted(self.terms)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QXYPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "QXYPoly") -> "QXYPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return QXYPoly(out)

    def __neg__(self) -> "QXYPoly":
        return QXYPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "QXYPoly") -> "QXYPoly":
        return self + (-other)

    def __mul__(self, c) -> "QXYPoly":
        return QXYPoly({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        inner = " + ".join(f"{c}*X^{i}*Y^{j}" for (i, j), c in self.items())
        return f"QXYPoly({inner or '0'})"

    def to_special(self) -> SpecialValue:
        return SpecialValue({(4 * i, -2 * j): c for (i, j), c in self.terms.items()})


def to_qxy(s: SpecialValue, pi_shift: int = 0) -> QXYPoly:
    """Relabel Gamma(1/4)^(4i) pi^(-j) as X^i Y^j after multiplying by
    pi^pi_shift.  Raises StructureError if a term is not of that form."""
    out = {}
    for (g, t), c in s.terms.items():
        t = t + 2 * pi_shift
        if g % 4 or t % 2:
            raise StructureError(
                f"term {c}*Gamma(1/4)^{g}*pi^({t}/2) is not a monomial in X, Y")
        if g < 0:
            raise StructureError(f"negative Gamma(1/4) power {g}")
        out[(g // 4, -(t // 2))] = c
    return QXYPoly(out)
