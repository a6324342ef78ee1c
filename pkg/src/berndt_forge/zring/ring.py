"""The differential ring Q(x)[v, v', z, z', z'', ...].

Here v = sqrt(x(1-x)) and z = (2/pi) K(x) with jets z^(j) = d^j z / dx^j.
Every element is kept in a normal form where the v-part of a monomial is
one of 1, v, v'; products are folded with

    v^2 = sigma,   (v')^2 = (1 - 4 sigma) / (4 sigma),   v v' = (1 - 2x) / 2,

sigma = x(1-x).  Coefficients are rational functions of x whose
denominators are powers of sigma.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .poly import ONE, SIGMA, SIGMA_PRIME, PolyX, RatFunX

__all__ = ["ZRingElem", "ddx", "ddy", "normalize", "Key"]

# (ev, evp, jets): jets[j] is the exponent of z^(j), trailing zeros trimmed
Key = tuple

_V_NONE = (0, 0)
_V = (1, 0)
_VP = (0, 1)

_SIGMA_RF = RatFunX(SIGMA)
_NEG_SIGMA_RF = RatFunX(-SIGMA)
_VP_SQUARED = RatFunX(ONE - SIGMA * 4, SIGMA * 4)
_V_VP = RatFunX(SIGMA_PRIME * Fraction(1, 2))
_VPP_OVER_V = RatFunX(PolyX.const(Fraction(-1, 4)), SIGMA * SIGMA)  # v'' = -v / (4 sigma^2)

_PRODUCT_TABLE = {
    (_V_NONE, _V_NONE): (_V_NONE, None),
    (_V_NONE, _V): (_V, None),
    (_V_NONE, _VP): (_VP, None),
    (_V, _V_NONE): (_V, None),
    (_VP, _V_NONE): (_VP, None),
    (_V, _V): (_V_NONE, _SIGMA_RF),
    (_VP, _VP): (_V_NONE, _VP_SQUARED),
    (_V, _VP): (_V_NONE, _V_VP),
    (_VP, _V): (_V_NONE, _V_VP),
}


def _trim_jets(jets) -> tuple:
    n = len(jets)
    while n and not jets[n - 1]:
        n -= 1
    return tuple(jets[:n])


def _add_jets(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


class ZRingElem:
    """Immutable element: a mapping from monomial keys to RatFunX coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Key, RatFunX] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, RatFunX):
                    c = RatFunX(c)
                if c:
                    ev, evp, jets = key
                    if ev not in (0, 1) or evp not in (0, 1) or ev * evp:
                        raise ValueError(f"key {key} is not in normal form")
                    clean[(ev, evp, _trim_jets(jets))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ZRingElem":
        e = cls.__new__(cls)
        e.terms = terms
        e._hash = None
        return e

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "ZRingElem":
        if not isinstance(c, RatFunX):
            c = RatFunX(c)
        return cls({(0, 0, ()): c})

    @classmethod
    def monomial(cls, coeff=1, *, z: int = 0, jets: Mapping[int, int] | None = None,
                 v: int = 0, vp: int = 0) -> "ZRingElem":
        """coeff * z^z * prod (z^(j))^e * v^v * (v')^vp, reduced."""
        exps = dict(jets or {})
        exps[0] = exps.get(0, 0) + z
        top = max(exps) if exps else -1
        jt = tuple(exps.get(j, 0) for j in range(top + 1))
        elem = cls({(0, 0, jt): coeff if isinstance(coeff, RatFunX) else RatFunX(coeff)})
        for _ in range(v):
            elem = elem * cls({(1, 0, ()): RatFunX.const(1)})
        for _ in range(vp):
            elem = elem * cls({(0, 1, ()): RatFunX.const(1)})
        return elem

    @classmethod
    def z(cls, j: int = 0, power: int = 1) -> "ZRingElem":
        return cls.monomial(jets={j: power})

    @classmethod
    def v(cls) -> "ZRingElem":
        return cls({(1, 0, ()): RatFunX.const(1)})

    @classmethod
    def vprime(cls) -> "ZRingElem":
        return cls({(0, 1, ()): RatFunX.const(1)})

    @classmethod
    def poly(cls, p: PolyX) -> "ZRingElem":
        return cls.const(RatFunX(p))

    # -- container protocol ---------------------------------------------
    def items(self) -> Iterator[tuple[Key, RatFunX]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ZRingElem.const(other) if other else ZRingElem()
        if not isinstance(other, ZRingElem):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "ZRingElem(0)"
        return "ZRingElem(" + " + ".join(
            f"[{c}]*{format_key(k)}" for k, c in sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))
        ) + ")"

    def sorted_items(self) -> list[tuple[Key, RatFunX]]:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "ZRingElem":
        if not isinstance(other, ZRingElem):
            other = ZRingElem.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            cur = out.get(k)
            if cur is None:
                out[k] = c
            else:
                s = cur + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return ZRingElem._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ZRingElem":
        return ZRingElem._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "ZRingElem":
        if not isinstance(other, ZRingElem):
            other = ZRingElem.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "ZRingElem":
        return (-self) + other

    def scale(self, c) -> "ZRingElem":
        """Multiply by a scalar (int, Fraction, PolyX or RatFunX)."""
        if isinstance(c, (int, Fraction)) and not c:
            return ZRingElem()
        out = {}
        for k, coeff in self.terms.items():
            prod = coeff * c
            if prod:
                out[k] = prod
        return ZRingElem._raw(out)

    def __mul__(self, other) -> "ZRingElem":
        if isinstance(other, (int, Fraction, PolyX, RatFunX)):
            return self.scale(other)
        out: dict = {}
        for (ev1, evp1, j1), c1 in self.terms.items():
            for (ev2, evp2, j2), c2 in other.terms.items():
                vkey, extra = _PRODUCT_TABLE[((ev1, evp1), (ev2, evp2))]
                c = c1 * c2
                if extra is not None:
                    c = c * extra
                key = (vkey[0], vkey[1], _add_jets(j1, j2))
                cur = out.get(key)
                if cur is None:
                    out[key] = c
                else:
                    s = cur + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return ZRingElem._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ZRingElem":
        result = ZRingElem.const(1)
        for _ in range(n):
            result = result * self
        return result

    # -- structure queries ----------------------------------------------
    def keys(self) -> set:
        return set(self.terms)

    def max_jet(self) -> int:
        return max((len(j) - 1 for _, _, j in self.terms), default=-1)


def _sort_key(key: Key):
    ev, evp, jets = key
    return (len(jets), jets, ev, evp)


def format_key(key: Key) -> str:
    ev, evp, jets = key
    parts = []
    names = {0: "z", 1: "z'", 2: "z''"}
    for j, e in enumerate(jets):
        if not e:
            continue
        name = names.get(j, f"z^({j})")
        if j and e > 1:
            name = f"({name})"
        parts.append(name if e == 1 else f"{name}^{e}")
    if ev:
        parts.append("v")
    if evp:
        parts.append("v'")
    return "*".join(parts) if parts else "1"


def _add_into(out: dict, key: Key, c: RatFunX) -> None:
    cur = out.get(key)
    if cur is None:
        if c:
            out[key] = c
        return
    s = cur + c
    if s:
        out[key] = s
    else:
        del out[key]


def ddx(e: ZRingElem) -> ZRingElem:
    """The x-derivation: v -> v', v' -> -v/(4 sigma^2), z^(j) -> z^(j+1)."""
    out: dict = {}
    for (ev, evp, jets), c in e.terms.items():
        dc = c.deriv()
        if dc:
            _add_into(out, (ev, evp, jets), dc)
        if ev:
            _add_into(out, (0, 1, jets), c)
        if evp:
            _add_into(out, (1, 0, jets), c * _VPP_OVER_V)
        for j, k in enumerate(jets):
            if not k:
                continue
            nj = list(jets)
            nj[j] -= 1
            if j + 1 < len(nj):
                nj[j + 1] += 1
            else:
                nj.append(1)
            _add_into(out, (ev, evp, _trim_jets(nj)), c * k)
    return ZRingElem._raw(out)


def ddy(e: ZRingElem) -> ZRingElem:
    """d/dy = (dx/dy) d/dx with dx/dy = -sigma z^2."""
    dx = ddx(e)
    out = {}
    for (ev, evp, jets), c in dx.terms.items():
        nj = _add_jets(jets, (2,))
        out[(ev, evp, nj)] = c * _NEG_SIGMA_RF
    return ZRingElem._raw(out)


# z'' = (z/4 - sigma' z') / sigma, from sigma z'' + (1 - 2x) z' - z/4 = 0
_ZPP_Z = RatFunX(PolyX.const(Fraction(1, 4)), SIGMA)
_ZPP_ZP = RatFunX(-SIGMA_PRIME, SIGMA)
_VP_OVER_V = RatFunX(SIGMA_PRIME * Fraction(1, 2), SIGMA)  # v' = sigma' v / (2 sigma)
_jet_forms: list[ZRingElem] = []


def _jet_form(j: int) -> ZRingElem:
    """z^(j) as a Q(x)-combination of z and z'."""
    if not _jet_forms:
        _jet_forms.append(ZRingElem({(0, 0, (1,)): RatFunX.const(1)}))
        _jet_forms.append(ZRingElem({(0, 0, (0, 1)): RatFunX.const(1)}))
    while len(_jet_forms) <= j:
        prev = _jet_forms[-1]
        d = ddx(prev)
        out = ZRingElem()
        for (ev, evp, jets), c in d.items():
            mono = ZRingElem({(ev, evp, jets[:2]): c})
            if len(jets) > 2 and jets[2]:
                mono = mono * (ZRingElem({(0, 0, (1,)): _ZPP_Z, (0, 0, (0, 1)): _ZPP_ZP}) ** jets[2])
            out = out + mono
        _jet_forms.append(out)
    return _jet_forms[j]


def normalize(e: ZRingElem) -> ZRingElem:
    """Canonical form over Q(x): v' rewritten as sigma' v / (2 sigma) and
    every z^(j), j >= 2, rewritten through the hypergeometric equation.

    Two elements are equal as functions iff their normal forms are equal.
    """
    out = ZRingElem()
    for (ev, evp, jets), c in e.items():
        if evp:
            term = ZRingElem({(1, 0, jets[:2]): c * _VP_OVER_V})
        else:
            term = ZRingElem({(ev, 0, jets[:2]): c})
        for j, k in enumerate(jets[2:], start=2):
            if k:
                term = term * (_jet_form(j) ** k)
        out = out + term
    return out
