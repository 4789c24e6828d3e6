"""Exact verification toolkit for a unirational parametrization of E^3/g, E: y^2 = x^3 - x."""

from .arith import QI, FpElem, GaussRat, PrimeField, fp_sqrt_minus_one
from .poly import Poly, VarSet, gcd, partial_derivative, valuation
from .ratfunc import RatFunc, substitute

__version__ = "0.1.0"

__all__ = [
    "QI",
    "FpElem",
    "GaussRat",
    "PrimeField",
    "fp_sqrt_minus_one",
    "Poly",
    "VarSet",
    "gcd",
    "partial_derivative",
    "valuation",
    "RatFunc",
    "substitute",
]
