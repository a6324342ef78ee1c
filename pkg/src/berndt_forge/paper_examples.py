"""Known closed forms and support patterns used as reference data.

The LaTeX strings are kept exactly as displayed in the source so that the
comparison exercises the parser as well as the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .latex import parse_latex
from .zring.special import QXYPoly

__all__ = [
    "PaperExample",
    "EXAMPLES",
    "MEMBERSHIP_DISPLAYS",
    "X9M6_LATEX",
    "x9m6_value",
    "conjecture_support",
    "CONJECTURE_IDS",
]


@dataclass(frozen=True)
class PaperExample:
    a: int
    m: int
    sign: str
    printed: str
    # printed form rewritten in X, Y when it uses Gamma(3/4)
    normalized: str | None = None
    # the printed value is off by a sign (the integrand has constant sign)
    sign_erratum: bool = False
    notes: str = field(default="")

    def printed_poly(self) -> QXYPoly:
        return parse_latex(self.printed)

    def expected_poly(self) -> QXYPoly:
        p = self.printed_poly()
        return -p if self.sign_erratum else p


EXAMPLES: tuple[PaperExample, ...] = (
    PaperExample(3, 1, "minus", r"-\frac{\Gamma^8(1/4)}{256\pi^2}"),
    PaperExample(
        7, 1, "minus", r"\frac{9\Gamma^{16}(1/4)}{2^{13}\pi^4}", sign_erratum=True,
        notes="x^7/(cos x - cosh x) < 0 on (0, oo); quadrature gives -10054.26...",
    ),
    PaperExample(
        5, 1, "plus", r"\frac{3\pi^3\Gamma^6(1/4)}{256\Gamma^6(3/4)}",
        normalized=r"\frac{3\Gamma^{12}(1/4)}{2^{11}\pi^{3}}",
    ),
    PaperExample(
        9, 1, "plus", r"\frac{3^3\cdot 7\pi^5\Gamma^{10}(1/4)}{2^{12}\Gamma^{10}(3/4)}",
        normalized=r"\frac{189\Gamma^{20}(1/4)}{2^{17}\pi^{5}}",
    ),
    PaperExample(
        9, 2, "plus",
        r"-\frac{189\Gamma^{16}(1/4)}{5\cdot 2^{15}\pi^{4}}+\frac{9\Gamma^{24}(1/4)}{2^{21}\pi^{8}}",
    ),
    PaperExample(
        9, 2, "minus",
        r"\frac{27\Gamma^{16}(1/4)}{5\cdot 2^{12}\pi^{4}}-\frac{\Gamma^{24}(1/4)}{2^{18}\pi^{8}}",
    ),
    PaperExample(
        11, 3, "minus",
        r"-\frac{4455\Gamma^{16}}{2^{15}\pi^4}-\frac{189\Gamma^{24}}{2^{20}\pi^6}"
        r"+\frac{297\Gamma^{24}}{2^{18}\pi^7}-\frac{935\Gamma^{24}}{2^{20}\pi^8}"
        r"-\frac{195\Gamma^{32}}{2^{27}\pi^{12}}",
    ),
    PaperExample(
        13, 3, "plus",
        r"\frac{405405\Gamma^{20}}{2^{20}\pi^5}+\frac{68607\Gamma^{28}}{2^{27}\pi^7}"
        r"-\frac{107757\Gamma^{28}}{2^{25}\pi^8}+\frac{84591\Gamma^{28}}{2^{25}\pi^9}"
        r"+\frac{17679\Gamma^{36}}{2^{32}\pi^{13}}",
    ),
    PaperExample(
        33, 2, "minus",
        r"\frac{55168390953244107 \Gamma^{64}}{85\cdot 2^{36} \pi ^{16}}"
        r"-\frac{135515509591329 \Gamma^{72}}{2^{42} \pi ^{20}}",
    ),
    PaperExample(
        33, 2, "plus",
        r"-\frac{1807702666364949654069 \Gamma^{64}}{85\cdot 2^{51}  \pi ^{16}}"
        r"+\frac{4440707733798260001 \Gamma^{72}}{2^{57} \pi ^{20}}",
    ),
)


def _mono(g: int, pi: int) -> tuple[int, int]:
    """Gamma(1/4)^g / pi^pi as an (X, Y) exponent pair."""
    assert g % 4 == 0
    return (g // 4, pi)


# (sign, m, exponent a as a function of p, smallest p, support as a function of p)
MEMBERSHIP_DISPLAYS = (
    ("minus", 1, lambda p: 4 * p - 1, 1, lambda p: {_mono(8 * p, 2 * p)}),
    ("plus", 1, lambda p: 4 * p + 1, 0, lambda p: {_mono(8 * p + 4, 2 * p + 1)}),
    ("minus", 2, lambda p: 4 * p + 1, 1,
     lambda p: {_mono(8 * p, 2 * p), _mono(8 * p + 8, 2 * p + 4)}),
    ("plus", 2, lambda p: 4 * p + 1, 1,
     lambda p: {_mono(8 * p, 2 * p), _mono(8 * p + 8, 2 * p + 4)}),
    ("plus", 3, lambda p: 4 * p + 1, 1,
     lambda p: {_mono(8 * p - 4, 2 * p - 1), _mono(8 * p + 4, 2 * p + 3),
                _mono(8 * p + 4, 2 * p + 2), _mono(8 * p + 4, 2 * p + 1),
                _mono(8 * p + 12, 2 * p + 7)}),
    ("minus", 3, lambda p: 4 * p - 1, 2,
     lambda p: {_mono(8 * p - 8, 2 * p - 2), _mono(8 * p, 2 * p + 2),
                _mono(8 * p, 2 * p + 1), _mono(8 * p, 2 * p),
                _mono(8 * p + 8, 2 * p + 6)}),
)


X9M6_LATEX = (
    r"\frac{-63}{5\cdot 2^{10}}"
    r"+ \frac{1071\Gamma^{8}}{5^2\cdot 2^{13}\pi^{2}}"
    r"-\frac{21\Gamma^{8}}{2^{12}\pi^{3}}"
    r"+\frac{63\Gamma^{8}}{2^{16}\pi^{4}}"
    r"-\frac{21\Gamma^{16}}{5^3\cdot 2^{13}\pi^{4}}"
    r"+ \frac{3\Gamma^{16}}{5\cdot 2^{13}\pi^{5}}"
    r"-\frac{161\Gamma^{16}}{5\cdot 2^{19}\pi^{6}}"
    r"+\frac{21\Gamma^{16}}{2^{21}\pi^{8}}"
    r"+\frac{\Gamma^{24}}{5^2\cdot 2^{19}\pi^{8}}"
    r"- \frac{\Gamma^{24}}{3\cdot 2^{20}\pi^{9}}"
    r"+ \frac{69\Gamma^{24}}{5\cdot 2^{25}\pi^{10}}"
    r"-\frac{21\Gamma^{24}}{5\cdot 2^{24}\pi^{11}}"
    r"+\frac{63\Gamma^{24}}{5\cdot 2^{27}\pi^{12 }}"
    r"-\frac{17\Gamma^{32}}{3\cdot 5^2\cdot 2^{31}\pi^{14}}"
    r"+\frac{13\Gamma^{32}}{5\cdot 2^{34}\pi^{16}}"
    r"+\frac{3\Gamma^{40}}{5^2\cdot 2^{40}\pi^{20}}"
)


def x9m6_value() -> QXYPoly:
    """Conjectured value of int x^9 / (cos x + cosh x)^6."""
    return parse_latex(X9M6_LATEX)


CONJECTURE_IDS = ("plus-x1", "plus-x5", "x9m6")


def conjecture_support(cid: str, n: int) -> dict[str, tuple[int, int, list[tuple[int, int]]]]:
    """Conjectured spans for odd m = 2n-1 and even m = 2n.

    Returns {"odd": (a, m, support), "even": (a, m, support)} where each
    support entry (g, k) stands for Gamma(1/4)^g / pi^k.  Entries with
    negative g (they occur for small n) are kept as stated.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def uniq(items):
        out = []
        for it in items:
            if it not in out:
                out.append(it)
        return out

    if cid == "plus-x1":
        odd = [(8 * j - 4, 6 * j - 4) for j in range(1, n)]
        odd += [(8 * j - 4, 6 * j - 5) for j in range(1, n + 1)]
        even = [(0, 0)]
        even += [(8 * j, 6 * j - 1) for j in range(1, n)]
        even += [(8 * j, 6 * j - 2) for j in range(1, n + 1)]
        a = 1
    elif cid == "plus-x5":
        odd = [(4, 1), (4, 2)]
        odd += [(8 * j - 4, 6 * j - 10 + i) for j in range(2, n - 2) for i in range(1, 7)]
        odd += [(8 * j + 8 * n - 20, 6 * j + 6 * n - 22 + i)
                for j in range(1, 4) for i in range(1, 8 - 2 * j)]
        even = [(0, 0)]
        even += [(8, i + 1) for i in range(1, 5)]
        even += [(16, i + 5) for i in range(1, 7) if i != 2]
        even += [(8 * j, 6 * j - 7 + i) for j in range(3, n - 1) for i in range(1, 7)]
        even += [(8 * j + 8 * n - 16, 6 * j + 6 * n - 19 + i)
                 for j in range(1, 4) for i in range(1, 8 - 2 * j)]
        a = 5
    else:
        raise ValueError(f"unknown structural conjecture {cid!r}")
    return {"odd": (a, 2 * n - 1, uniq(odd)), "even": (a, 2 * n, uniq(even))}
