"""Arbitrary-precision kernels built on mpmath.  Precision arguments are in bits."""

from .core import (
    agm,
    bits_to_digits,
    digits_to_bits,
    ellipe,
    ellipk,
    ellipke,
    gamma_quarter,
    make_ctx,
    to_fraction,
    y_of_x,
    z_jet_numeric,
)
from .evaluate import ZRingEvaluator, eval_qxy, eval_special, eval_zring, eval_zring_ctx
from .quad import QuadratureReport, quad_berndt
from .recon import rational_reconstruct
from .series import sum_series, sum_series_ctx

__all__ = [
    "agm", "bits_to_digits", "digits_to_bits", "ellipe", "ellipk", "ellipke",
    "gamma_quarter", "make_ctx", "to_fraction", "y_of_x", "z_jet_numeric",
    "ZRingEvaluator", "eval_qxy", "eval_special", "eval_zring", "eval_zring_ctx",
    "QuadratureReport", "quad_berndt", "rational_reconstruct", "sum_series",
    "sum_series_ctx",
]
