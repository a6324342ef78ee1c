"""Dense univariate polynomials in x over Q and rational functions built on them."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(Fraction(c) for c in coeffs[:n])


class PolyX:
    """Polynomial sum c_i x^i with Fraction coefficients, low degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _trim(list(coeffs))
        self._hash = None

    @classmethod
    def const(cls, c: Number) -> "PolyX":
        return cls([c])

    @classmethod
    def x(cls) -> "PolyX":
        return cls([0, 1])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "PolyX":
        p = cls.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyX.const(other)
        if not isinstance(other, PolyX):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"PolyX({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")

    def __add__(self, other) -> "PolyX":
        if isinstance(other, (int, Fraction)):
            other = PolyX.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyX._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "PolyX":
        return PolyX._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "PolyX":
        if isinstance(other, (int, Fraction)):
            other = PolyX.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "PolyX":
        return (-self) + other

    def __mul__(self, other) -> "PolyX":
        if isinstance(other, (int, Fraction)):
            if not other:
                return PolyX()
            return PolyX._raw(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyX()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return PolyX._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyX":
        result = PolyX.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "PolyX") -> tuple["PolyX", "PolyX"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return PolyX(), self
        quo = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            f = c / lead
            quo[i - db] = f
            for j, cb in enumerate(other.coeffs):
                rem[i - db + j] -= f * cb
        return PolyX(quo), PolyX(rem[:db] if db > 0 else [])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_with(self, x, convert):
        """Horner evaluation with coefficients mapped through ``convert``."""
        acc = convert(0)
        for c in reversed(self.coeffs):
            acc = acc * x + convert(c)
        return acc

    def deriv(self) -> "PolyX":
        return PolyX._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, inner: "PolyX") -> "PolyX":
        acc = PolyX()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reflect(self) -> "PolyX":
        """f(1 - x)."""
        return self.compose(PolyX([1, -1]))

    def monic(self) -> "PolyX":
        if not self.coeffs:
            return self
        return self * (1 / self.coeffs[-1])

    def content_sign(self) -> int:
        return 1 if not self.coeffs or self.coeffs[-1] > 0 else -1


X = PolyX.x()
ONE = PolyX.const(1)
SIGMA = PolyX([0, 1, -1])          # x (1 - x)
SIGMA_PRIME = PolyX([1, -2])       # 1 - 2x
_ONE_MINUS_X = PolyX([1, -1])


def poly_gcd(a: PolyX, b: PolyX) -> PolyX:
    """Monic gcd over Q."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def _strip_factor(num: PolyX, den: PolyX, root: Fraction, factor: PolyX):
    # cancel (x - root) style linear factors shared by num and den
    while num and den and num(root) == 0 and den(root) == 0:
        num = num.divmod(factor)[0]
        den = den.divmod(factor)[0]
    return num, den


class RatFunX:
    """Reduced quotient num/den of PolyX with a positive leading
    denominator coefficient."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if isinstance(num, (int, Fraction)):
            num = PolyX.const(num)
        if den is None:
            den = ONE
        elif isinstance(den, (int, Fraction)):
            den = PolyX.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _reduce(num: PolyX, den: PolyX) -> tuple[PolyX, PolyX]:
        if num.is_zero():
            return PolyX(), ONE
        if den.degree > 0:
            # denominators in this package are products of x and 1 - x;
            # strip those first, fall back to a full gcd otherwise
            num, den = _strip_factor(num, den, Fraction(0), X)
            num, den = _strip_factor(num, den, Fraction(1), _ONE_MINUS_X)
            if den.degree > 0 and num.degree > 0 and not _only_sigma_roots(den):
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
        lead = den.coeffs[-1]
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        return num, den

    @classmethod
    def const(cls, c: Number) -> "RatFunX":
        return cls(PolyX.const(c), ONE, reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, PolyX)):
            other = RatFunX(other)
        if not isinstance(other, RatFunX):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        if self.den == ONE:
            return f"RatFunX({self.num})"
        return f"RatFunX(({self.num}) / ({self.den}))"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __add__(self, other) -> "RatFunX":
        if not isinstance(other, RatFunX):
            other = RatFunX(other)
        if self.den == other.den:
            return RatFunX(self.num + other.num, self.den)
        return RatFunX(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunX":
        return RatFunX(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunX":
        if not isinstance(other, RatFunX):
            other = RatFunX(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunX":
        return (-self) + other

    def __mul__(self, other) -> "RatFunX":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunX(PolyX(), ONE, reduced=True)
            return RatFunX(self.num * other, self.den, reduced=True)
        if isinstance(other, PolyX):
            return RatFunX(self.num * other, self.den)
        if self.den == ONE and other.den == ONE:
            return RatFunX(self.num * other.num, ONE, reduced=True)
        return RatFunX(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunX":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, PolyX):
            other = RatFunX(other)
        return self * RatFunX(other.den, other.num)

    def deriv(self) -> "RatFunX":
        if self.den.degree <= 0:
            return RatFunX(self.num.deriv(), self.den, reduced=True)
        return RatFunX(
            self.num.deriv() * self.den - self.num * self.den.deriv(),
            self.den * self.den,
        )

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num(x) / d

    def eval_with(self, x, convert):
        return self.num.eval_with(x, convert) / self.den.eval_with(x, convert)


def _only_sigma_roots(den: PolyX) -> bool:
    # True when den = c * x^i * (1-x)^j, in which case the strip above was exact
    d = den
    while d.degree > 0 and d(Fraction(0)) == 0:
        d = d.divmod(X)[0]
    while d.degree > 0 and d(Fraction(1)) == 0:
        d = d.divmod(_ONE_MINUS_X)[0]
    return d.degree <= 0


def sigma_decompose(f: PolyX) -> tuple[str, list[Fraction]] | None:
    """Write f in Q[sigma] or Q[sigma]*sigma' (sigma = x(1-x)).

    Returns ("even", [c_0, c_1, ...]) for f = sum c_d sigma^d,
    ("odd", [...]) for f = sigma' * sum c_d sigma^d, or None when f
    satisfies neither symmetry f(1-x) = +/- f(x).
    """
    if f.is_zero():
        return ("even", [])
    refl = f.reflect()
    if (f - refl).is_zero():
        kind, rest = "even", f
    elif (f + refl).is_zero():
        kind, rest = "odd", f.divmod(SIGMA_PRIME)[0]
    else:
        return None
    coeffs: list[Fraction] = []
    # peel leading terms: x^(2d) has leading coeff (-1)^d in sigma^d
    while rest:
        d, r = divmod(rest.degree, 2)
        if r:
            return None
        c = rest.leading() * (-1) ** d
        while len(coeffs) <= d:
            coeffs.append(Fraction(0))
        coeffs[d] = c
        rest = rest - SIGMA ** d * c
    return kind, coeffs


def sigma_poly(coeffs: Sequence[Number], odd: bool = False) -> PolyX:
    """sum c_d sigma^d, times sigma' when ``odd``."""
    acc = PolyX()
    for d, c in enumerate(coeffs):
        if c:
            acc = acc + SIGMA ** d * c
    return acc * SIGMA_PRIME if odd else acc
