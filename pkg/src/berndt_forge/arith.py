"""Exact rational arithmetic: Bernoulli numbers, Laurent coefficients of
cosh^-m / sinh^-m at their poles, and the derivative coefficient triangles.

All values are ``fractions.Fraction``.  Tables are memoized and only ever
grow; every cache is guarded by a lock so concurrent callers are safe.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "bernoulli",
    "even_zeta_rational",
    "gamma_lm",
    "CoeffTriangle",
    "triangle",
    "sinh_power_derivative",
    "printed_b_recurrence",
    "printed_a_recurrence",
    "TRIANGLE_KINDS",
]

TRIANGLE_KINDS = ("B", "Btilde", "D", "Dtilde")

_lock = threading.Lock()
_bernoulli_even: list[Fraction] = [Fraction(1)]  # B_0, B_2, B_4, ...


def bernoulli(n: int) -> Fraction:
    """Return B_n for the generating function x/(e^x - 1).

    Only even n (and n = 1) are meaningful; odd n > 1 is rejected because
    the value is identically zero.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        raise ValueError(f"odd Bernoulli index {n} > 1 is not a valid query")
    k = n // 2
    with _lock:
        table = _bernoulli_even
        while len(table) <= k:
            # sum_{j<N} C(N+1, j) B_j = -(N+1) B_N with N = 2m, odd terms
            # vanish except B_1.
            m = len(table)
            big = 2 * m
            s = Fraction(comb(big + 1, 1)) * Fraction(-1, 2)
            for j, b in enumerate(table):
                s += comb(big + 1, 2 * j) * b
            table.append(-s / (big + 1))
        return table[k]


def even_zeta_rational(k: int) -> Fraction:
    """r with zeta(2k) = r * pi^(2k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sign = 1 if k % 2 else -1
    return sign * bernoulli(2 * k) * 2 ** (2 * k - 1) / factorial(2 * k)


def _gamma_factor(k: int) -> Fraction:
    # (1 - 2^(1-2k)) B_2k / (2k)!
    return (1 - Fraction(2) ** (1 - 2 * k)) * bernoulli(2 * k) / factorial(2 * k)


_gamma_cache: dict[tuple[int, int], Fraction] = {}


def gamma_lm(l: int, m: int) -> Fraction:
    """Laurent coefficient gamma_{l,m} by m-fold convolution of the
    single-factor sequence (1 - 2^(1-2k)) B_2k / (2k)!."""
    if l < 0 or m < 1:
        raise ValueError("need l >= 0 and m >= 1")
    key = (l, m)
    with _lock:
        hit = _gamma_cache.get(key)
    if hit is not None:
        return hit
    base = [_gamma_factor(k) for k in range(l + 1)]
    conv = [Fraction(1)] + [Fraction(0)] * l
    for _ in range(m):
        conv = [sum((conv[i] * base[t - i] for i in range(t + 1)), Fraction(0))
                for t in range(l + 1)]
    value = (-1) ** m * 2 ** l * conv[l]
    with _lock:
        _gamma_cache[key] = value
    return value


# ---------------------------------------------------------------------------
# Local Laurent algebra over {1/sinh, cosh}: an element is a dict
# {(j, e): c} meaning sum c * sinh^-j * cosh^e with e in {0, 1}.


def _diff_sinh_laurent(f: dict[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
    out: dict[tuple[int, int], Fraction] = {}

    def add(key, c):
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (j, e), c in f.items():
        if e == 0:
            # d(s^-j) = -j s^-(j+1) cosh
            if j:
                add((j + 1, 1), -j * c)
        else:
            # d(s^-j cosh) = -j s^-(j+1) cosh^2 + s^-(j-1), cosh^2 = 1 + s^2
            add((j + 1, 0), -j * c)
            add((j - 1, 0), (1 - j) * c)
    return out


def sinh_power_derivative(m: int, order: int) -> dict[tuple[int, int], Fraction]:
    """d^order/dy^order of sinh(y)^-m as a Laurent element {(j, e): c}."""
    f: dict[tuple[int, int], Fraction] = {(m, 0): Fraction(1)}
    for _ in range(order):
        f = _diff_sinh_laurent(f)
    return f


@dataclass(frozen=True)
class CoeffTriangle:
    kind: str
    entries: tuple[tuple[Fraction, ...], ...]
    inverse: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def row(self, k: int) -> tuple[Fraction, ...]:
        return self.entries[k]

    def inverse_row(self, k: int) -> tuple[Fraction, ...]:
        return self.inverse[k]


def _forward_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a lower-triangular matrix by forward substitution."""
    n = len(rows)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for col in range(n):
        for i in range(col, n):
            acc = Fraction(1 if i == col else 0)
            for t in range(col, i):
                acc -= rows[i][t] * inv[t][col]
            inv[i][col] = acc / rows[i][i]
    return inv


_triangle_rows: dict[str, list[list[Fraction]]] = {"B": [], "D": []}


def _base_rows(base: str, k: int) -> list[list[Fraction]]:
    m = 1 if base == "B" else 2
    with _lock:
        rows = _triangle_rows[base]
        while len(rows) <= k:
            r = len(rows)
            deriv = sinh_power_derivative(m, 2 * r)
            row = [Fraction(0)] * (r + 1)
            for (j, e), c in deriv.items():
                if e:
                    raise ArithmeticError("even-order derivative left a cosh factor")
                row[(j - m) // 2] = c
            rows.append(row)
        return [list(rw) for rw in rows[: k + 1]]


def triangle(kind: str, k: int) -> CoeffTriangle:
    """Rows 0..k of the B, Btilde, D or Dtilde triangle with exact inverse.

    Row r of B holds the coefficients of sinh^-(2l+1) in d^2r/dy^2r sinh^-1;
    row r of D those of sinh^-(2l+2) in d^2r/dy^2r sinh^-2.  The tilde
    variants carry the (-1)^l signs of the cosh analogues.
    """
    if kind not in TRIANGLE_KINDS:
        raise ValueError(f"unknown triangle kind {kind!r}")
    if k < 0:
        raise ValueError("k must be >= 0")
    rows = _base_rows(kind[0], k)
    if kind.endswith("tilde"):
        rows = [[(-1) ** l * c for l, c in enumerate(row)] for row in rows]
    for row in rows:
        row.extend([Fraction(0)] * (k + 1 - len(row)))
    inv = _forward_inverse(rows)
    return CoeffTriangle(
        kind=kind,
        entries=tuple(tuple(r) for r in rows),
        inverse=tuple(tuple(r) for r in inv),
    )


def printed_b_recurrence(k: int, l: int, prev: tuple[Fraction, ...]) -> Fraction:
    """B_{k,l} from row k-1 by the stated three-term recurrence
    (kept for cross-checking; rows are generated by differentiation)."""
    def at(i):
        return prev[i] if 0 <= i < len(prev) else Fraction(0)
    return (2 * l - 1) * (2 * l) * at(l - 1) + (2 * l + 1) ** 2 * at(l)


def printed_a_recurrence(k: int, l: int, prev: dict[int, Fraction]) -> Fraction:
    """A_{2k+2,2l} from the A_{2k,*} row by the printed recurrence.

    ``prev`` maps 2l -> A_{2k,2l}.  This disagrees with direct
    differentiation already at A_{4,2} (1/2 here versus 2/3), so it is
    exposed only for documentation and tests.
    """
    return Fraction(1, 2 * k * (2 * k + 2)) * (
        (2 * l - 1) * (2 * l - 2) * prev.get(2 * l - 2, Fraction(0))
        + 4 * l * l * prev.get(2 * l, Fraction(0))
    )
