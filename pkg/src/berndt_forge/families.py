"""The four hyperbolic sum families used by the reduction pipeline.

    Sbar(p, m)   = sum (-1)^(n-1) n^p / sinh^m(n y)
    Ctilde(p, m) = sum (-1)^(n-1) nt^p / cosh^m(nt y)
    Cprime(p, m) = sum nt^p / cosh^m(nt y)
    S(p, m)      = sum n^p / sinh^m(n y)

with n >= 1 and nt = n - 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

__all__ = ["SumFamily", "TAGS", "LEGAL_PARITIES"]

TAGS = ("Sbar", "Ctilde", "Cprime", "S")

# tag -> required parity of (p, m); 1 means odd
LEGAL_PARITIES = {
    "Sbar": (1, 1),
    "Ctilde": (1, 1),
    "Cprime": (0, 0),
    "S": (0, 0),
}


@dataclass(frozen=True)
class SumFamily:
    tag: str
    p: int
    m: int

    def __post_init__(self):
        if self.tag not in TAGS:
            raise DomainError(f"unknown sum family {self.tag!r}")
        if self.m < 1:
            raise DomainError("power m must be positive")
        want = LEGAL_PARITIES[self.tag]
        if (self.p % 2, self.m % 2) != want:
            raise DomainError(
                f"{self.tag} needs p {'odd' if want[0] else 'even'} and "
                f"m {'odd' if want[1] else 'even'}, got p={self.p}, m={self.m}")

    @property
    def alternating(self) -> bool:
        return self.tag in ("Sbar", "Ctilde")

    @property
    def half_integer(self) -> bool:
        return self.tag in ("Ctilde", "Cprime")

    @property
    def uses_cosh(self) -> bool:
        return self.half_integer

    def __str__(self) -> str:
        return f"{self.tag}[{self.p},{self.m}]"
