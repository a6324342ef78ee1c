"""Base hyperbolic sums, the ansatz fitter and power reduction."""

from ..families import SumFamily
from .ansatz import AnsatzShape, FitResult, Template, fit_ansatz, sample_points
from .bases import (
    base_shape,
    cprime_shape,
    ctilde_shape,
    base_element,
    cprime_base,
    ctilde_base,
    fit_s2,
    fit_sbar,
    s2_base,
    s2_shape,
    sbar_base,
    sbar_shape,
)
from .reduce import reduce_power, reduced_element

__all__ = [
    "SumFamily", "AnsatzShape", "FitResult", "Template", "fit_ansatz",
    "sample_points", "base_element", "base_shape", "cprime_base", "cprime_shape",
    "ctilde_base", "ctilde_shape", "fit_s2", "fit_sbar", "s2_base", "s2_shape",
    "sbar_base", "sbar_shape", "reduce_power", "reduced_element",
]
