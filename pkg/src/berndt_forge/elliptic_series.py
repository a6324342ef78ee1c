"""Maclaurin series in u of the Jacobi functions sn, cn, dn with parameter x,
with coefficients in Q[x]."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .zring.poly import PolyX

__all__ = [
    "XPowerSeries",
    "sn_cn_dn",
    "p_poly",
    "q_poly",
    "sn_sq_coeffs",
    "sd_sq_coeffs",
    "u_over_sn_sq_coeffs",
]

_ZERO = PolyX()
_ONE = PolyX.const(1)


class XPowerSeries:
    """Truncated power series sum coeffs[t] * u^t with PolyX coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(c if isinstance(c, PolyX) else PolyX.const(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, t: int) -> PolyX:
        if not 0 <= t < self.order:
            raise IndexError(f"coefficient u^{t} is beyond truncation order {self.order}")
        return self.coeffs[t]

    def __repr__(self) -> str:
        return f"XPowerSeries(order={self.order}, {list(map(str, self.coeffs))})"

    def __eq__(self, other) -> bool:
        return isinstance(other, XPowerSeries) and self.coeffs == other.coeffs

    def _check(self, other: "XPowerSeries") -> int:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")
        return self.order

    def __add__(self, other: "XPowerSeries") -> "XPowerSeries":
        n = self._check(other)
        return XPowerSeries([self.coeffs[t] + other.coeffs[t] for t in range(n)])

    def __neg__(self) -> "XPowerSeries":
        return XPowerSeries([-c for c in self.coeffs])

    def __sub__(self, other: "XPowerSeries") -> "XPowerSeries":
        return self + (-other)

    def __mul__(self, other) -> "XPowerSeries":
        if isinstance(other, (int, Fraction, PolyX)):
            return XPowerSeries([c * other for c in self.coeffs])
        n = self._check(other)
        return XPowerSeries([_cauchy(self.coeffs, other.coeffs, t) for t in range(n)])

    __rmul__ = __mul__

    def __truediv__(self, other: "XPowerSeries") -> "XPowerSeries":
        """Division by a series whose constant term is the polynomial 1."""
        n = self._check(other)
        if other.coeffs[0] != _ONE:
            raise ZeroDivisionError("divisor must have constant term 1")
        out: list[PolyX] = []
        for t in range(n):
            acc = self.coeffs[t]
            for i in range(1, t + 1):
                if other.coeffs[i]:
                    acc = acc - other.coeffs[i] * out[t - i]
            out.append(acc)
        return XPowerSeries(out)

    def shift_down(self, k: int = 1) -> "XPowerSeries":
        """Divide by u^k; the first k coefficients must vanish.  Order drops by k."""
        if any(self.coeffs[:k]):
            raise ValueError(f"series is not divisible by u^{k}")
        return XPowerSeries(self.coeffs[k:])

    def truncate(self, order: int) -> "XPowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return XPowerSeries(self.coeffs[:order])

    def evaluate(self, x, u):
        """Numeric value of the truncated series at parameter x and argument u."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * u + c(x)
        return acc


def _cauchy(a, b, t) -> PolyX:
    acc = _ZERO
    for i in range(t + 1):
        if a[i] and b[t - i]:
            acc = acc + a[i] * b[t - i]
    return acc


# Internally every series is stored in exponential form, sum a_t u^t / t!,
# with a_t a list of integer (or Fraction) coefficients in x, low degree
# first.  sn, cn, dn and sd then have integer coefficients.
_lock = threading.Lock()
_egf: dict[str, list[list]] = {
    "sn": [[0], [1]],
    "cn": [[1], [0]],
    "dn": [[1], [0]],
    "sd": [[0], [1]],
    "uds": [[1]],
}


def _padd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _pmul(a: list, b: list) -> list:
    if not any(a) or not any(b):
        return [0]
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _pscale(a: list, c) -> list:
    return [c * v for v in a]


def _binom_sum(a: list, b: list, t: int, skip_last: bool = False) -> list:
    """sum_i C(t, i) a_i b_(t-i), optionally omitting i = t."""
    acc = [0]
    top = t - 1 if skip_last else t
    for i in range(top + 1):
        if any(a[i]) and any(b[t - i]):
            acc = _padd(acc, _pscale(_pmul(a[i], b[t - i]), comb(t, i)))
    return acc


def _grow(order: int) -> None:
    sn, cn, dn = _egf["sn"], _egf["cn"], _egf["dn"]
    while len(sn) < order:
        t = len(sn) - 1
        sn.append(_binom_sum(cn, dn, t))
        cn.append(_pscale(_binom_sum(sn, dn, t), -1))
        dn.append([0] + _pscale(_binom_sum(sn, cn, t), -1))
    sd = _egf["sd"]
    while len(sd) < order:
        # sn = sd * dn with dn_0 = 1
        t = len(sd)
        sd.append(_padd(sn[t], _pscale(_binom_sum(sd, dn, t, skip_last=True), -1)))
    w = _egf["uds"]
    while len(w) < order - 1:
        # w * sn = u * dn:  t w_(t-1) = t dn_(t-1) - sum_(i<t-1) C(t,i) w_i sn_(t-i)
        t = len(w) + 1
        acc = [0]
        for i in range(t - 1):
            if any(w[i]) and any(sn[t - i]):
                acc = _padd(acc, _pscale(_pmul(w[i], sn[t - i]), comb(t, i)))
        w.append(_padd(dn[t - 1], _pscale(acc, Fraction(-1, t))))


def _series(name: str, order: int) -> list:
    with _lock:
        _grow(order + 1)
        return [list(c) for c in _egf[name][:order]]


def sn_cn_dn(order: int) -> tuple[XPowerSeries, XPowerSeries, XPowerSeries]:
    """Truncated Maclaurin series of sn, cn, dn generated from
    sn' = cn dn, cn' = -sn dn, dn' = -x sn cn."""
    if order < 2:
        raise ValueError("order must be >= 2")
    return tuple(
        XPowerSeries([PolyX(c) * Fraction(1, factorial(t)) for t, c in enumerate(_series(name, order))])
        for name in ("sn", "cn", "dn")
    )


def p_poly(n: int) -> PolyX:
    """p_n with sd(u) = sum p_n(x) u^n / n!, n odd."""
    if n < 1 or n % 2 == 0:
        raise ValueError("p_n is defined here for odd positive n only")
    return PolyX(_series("sd", n + 1)[n])


def q_poly(n: int) -> PolyX:
    """q_n with u ds(u) = sum q_n(x) u^n / n!, n even."""
    if n < 0 or n % 2:
        raise ValueError("q_n is defined here for even nonnegative n only")
    return PolyX(_series("uds", n + 1)[n])


def _ordinary(name: str, order: int) -> list:
    return [PolyX(c) * Fraction(1, factorial(t)) for t, c in enumerate(_series(name, order))]


def _square(coeffs: list) -> list[PolyX]:
    return [_cauchy(coeffs, coeffs, t) for t in range(len(coeffs))]


def sn_sq_coeffs(order: int) -> list[PolyX]:
    """Coefficients of u^0 .. u^(order-1) in sn(u)^2 (odd ones vanish)."""
    if order < 4:
        raise ValueError("order must be >= 4")
    return _square(_ordinary("sn", order))


def sd_sq_coeffs(order: int) -> list[PolyX]:
    """Coefficients of u^0 .. u^(order-1) in sd(u)^2."""
    return _square(_ordinary("sd", order))


def u_over_sn_sq_coeffs(order: int) -> list[PolyX]:
    """Coefficients of u^0 .. u^(order-1) in (u / sn(u))^2."""
    w = _ordinary("uds", order)
    dn = _ordinary("dn", order)
    # u / sn = (u ds) / dn
    ratio = XPowerSeries(w) / XPowerSeries(dn)
    return _square(list(ratio.coeffs))
