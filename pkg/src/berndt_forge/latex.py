"""LaTeX rendering and parsing of Q[X, Y] values, X = Gamma(1/4)^4, Y = 1/pi.

Rendering produces sums of ``\\frac{c \\Gamma^{4i}(1/4)}{d \\cdot 2^{k}\\pi^{j}}``
terms.  Parsing accepts the usual hand-written variants (factored
integers, ``\\Gamma`` with or without ``(1/4)``, ``\\Gamma(3/4)`` powers).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import StructureError
from .zring.special import QXYPoly, SpecialValue, to_qxy

__all__ = ["format_latex", "parse_latex", "normalize_latex", "latex_terms_equal"]


def _split_two(n: int) -> tuple[int, int]:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return n, k


def _term_latex(c: Fraction, i: int, j: int) -> str:
    num_parts = []
    if abs(c.numerator) != 1 or (i == 0 and j >= 0):
        num_parts.append(str(abs(c.numerator)))
    if i:
        num_parts.append(f"\\Gamma^{{{4 * i}}}(1/4)")
    if j < 0:
        num_parts.append(f"\\pi^{{{-j}}}")
    num = "".join(num_parts) or "1"

    odd, k = _split_two(c.denominator)
    den_parts = []
    if odd > 1:
        den_parts.append(str(odd))
    if k:
        den_parts.append(("\\cdot " if odd > 1 else "") + f"2^{{{k}}}")
    if j > 0:
        den_parts.append(f"\\pi^{{{j}}}")
    den = "".join(den_parts)
    body = f"\\frac{{{num}}}{{{den}}}" if den else num
    return ("-" if c < 0 else "+") + body


def format_latex(poly: QXYPoly) -> str:
    if not len(poly):
        return "0"
    out = "".join(_term_latex(c, i, j) for (i, j), c in poly.items())
    return out[1:] if out.startswith("+") else out


# -- parsing -------------------------------------------------------------

_TOKEN = re.compile(
    r"\\Gamma(?:\^\{?(?P<gexp>-?\d+)\}?)?(?:\((?P<garg>[13])/4\))?"
    r"|\\pi(?:\s*\^\{?(?P<pexp>-?\d+)\}?)?"
    r"|(?P<int>\d+)(?:\^\{?(?P<iexp>\d+)\}?)?"
    r"|\\cdot|\\,|\s+"
)


def _parse_product(text: str) -> SpecialValue:
    """A product of integers, integer powers, pi powers and Gamma powers."""
    coeff = Fraction(1)
    g = 0
    two_pi = 0
    sign = 1
    text = text.strip()
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = mt.end()
        tok = mt.group(0)
        if tok.startswith("\\Gamma"):
            e = int(mt.group("gexp") or 1)
            if mt.group("garg") == "3":
                # Gamma(3/4) = sqrt(2) pi / Gamma(1/4)
                if e % 2:
                    raise ValueError("odd power of Gamma(3/4) leaves sqrt(2)")
                coeff *= Fraction(2) ** (e // 2)
                two_pi += 2 * e
                g -= e
            else:
                g += e
        elif tok.startswith("\\pi"):
            two_pi += 2 * int(mt.group("pexp") or 1)
        elif mt.group("int"):
            coeff *= Fraction(int(mt.group("int"))) ** int(mt.group("iexp") or 1)
    return SpecialValue.term(sign * coeff, g, two_pi)


def _split_terms(expr: str) -> list[str]:
    """Split at top-level + and -, keeping signs."""
    terms, depth, cur = [], 0, ""
    for ch in expr:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip():
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        terms.append(cur)
    return terms


def _braced(s: str, start: int) -> tuple[str, int]:
    if s[start] != "{":
        raise ValueError("expected '{'")
    depth = 0
    for k in range(start, len(s)):
        if s[k] == "{":
            depth += 1
        elif s[k] == "}":
            depth -= 1
            if depth == 0:
                return s[start + 1:k], k + 1
    raise ValueError("unbalanced braces")


def parse_latex(expr: str) -> QXYPoly:
    """Parse a displayed closed form into Q[X, Y]; Gamma(3/4) is rewritten
    through the reflection formula."""
    total = SpecialValue()
    for term in _split_terms(re.sub(r"\s+", "", expr)):
        t = term.strip()
        sign = 1
        if t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:].strip()
        if t.startswith("\\frac"):
            num, k = _braced(t, len("\\frac"))
            den, k = _braced(t, k)
            rest = t[k:].strip()
            val = _parse_product(num)
            dv = _parse_product(den)
            ((dg, dt), dc), = dv.terms.items()
            val = val * SpecialValue.term(1 / dc, -dg, -dt)
            if rest:
                val = val * _parse_product(rest)
        else:
            val = _parse_product(t)
        total = total + val * sign
    try:
        return to_qxy(total)
    except StructureError as exc:
        raise ValueError(f"not a Q[X, Y] expression: {exc}") from exc


_INT_CHAIN = re.compile(r"(?<!\^\{)(?<!\d)(\d+(?:\^\{\d+\})?(?:\\cdot\d+(?:\^\{\d+\})?)*)")


def _eval_chain(mt) -> str:
    val = 1
    for factor in mt.group(1).split("\\cdot"):
        base, _, exp = factor.partition("^")
        val *= int(base) ** int(exp.strip("{}") or 1)
    return str(val)


def normalize_latex(expr: str) -> list[str]:
    """Order-free normal form: whitespace and the "(1/4)" suffix removed,
    exponents braced, integer products such as 5\\cdot 2^{12} multiplied
    out, leading sign made explicit, terms sorted."""
    s = re.sub(r"\s+", "", expr).replace("(1/4)", "").replace("\\,", "")
    s = re.sub(r"\^(-?\d)", r"^{\1}", s)
    s = _INT_CHAIN.sub(_eval_chain, s)
    terms = [t if t[0] in "+-" else "+" + t for t in _split_terms(s)]
    terms = [_pull_sign(t) for t in terms]
    return sorted(terms)


def _pull_sign(term: str) -> str:
    # +\frac{-63}{..} and -\frac{63}{..} name the same term
    m = re.match(r"([+-])\\frac\{-", term)
    if not m:
        return term
    sign = "-" if m.group(1) == "+" else "+"
    return sign + "\\frac{" + term[m.end():]


def latex_terms_equal(a: str, b: str) -> bool:
    return normalize_latex(a) == normalize_latex(b)
