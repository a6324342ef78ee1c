"""Exact evaluation of Berndt-type integrals in Q[Gamma(1/4)^4, 1/pi]."""

__version__ = "0.1.0"
