"""Exact arithmetic tower: rationals, Laurent polynomials, cyclotomics, rational functions."""

from fractions import Fraction as Rational

from .cyclotomic import Cyclotomic, cyclotomic_polynomial, simplify_coefficient
from .poly import Poly, parse_poly, sort_vars
from .ratfunc import (CyclotomicRationalFunction, ExactDivisionError, RationalFunction, substitute,
                      to_laurent)

LaurentQ = Poly

Q = Poly.var("q")
QINV = Poly.var("q", -1)
S = Poly.var("s")
Z = Poly.var("z")
E = Poly.var("E")
QDIFF = Q - QINV  # q - q^-1

__all__ = [
    "Rational", "Cyclotomic", "cyclotomic_polynomial", "simplify_coefficient",
    "Poly", "LaurentQ", "parse_poly", "sort_vars",
    "CyclotomicRationalFunction", "ExactDivisionError", "RationalFunction", "substitute", "to_laurent",
    "Q", "QINV", "S", "Z", "E", "QDIFF",
]
