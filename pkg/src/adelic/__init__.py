"""Adelic Euler characteristics for one-dimensional global fields.

Exact local-field arithmetic and Fourier analysis of step functions,
global field descriptors with ideles and Arakelov divisors, and the
Euler-characteristic calculus (chi, h0, h1) with machine verification of
Riemann-Roch, Serre duality and Poisson summation.
"""

from .values import LogValue, PosRealExact
from .localfields import (
    LAURENT,
    P_ADIC,
    LocalElement,
    LocalFieldDesc,
    UnitAngle,
    abs_value,
    base_field,
    lambda_fractional,
    local_measure,
    quadratic_extension,
    residue_coefficient_angle,
    standard_character,
    trace_to_base,
    valuation,
)

__all__ = [
    "LogValue",
    "PosRealExact",
    "LocalElement",
    "LocalFieldDesc",
    "UnitAngle",
    "P_ADIC",
    "LAURENT",
    "abs_value",
    "base_field",
    "lambda_fractional",
    "local_measure",
    "quadratic_extension",
    "residue_coefficient_angle",
    "standard_character",
    "trace_to_base",
    "valuation",
]

__version__ = "0.1.0"
