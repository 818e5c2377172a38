"""Exact arithmetic over Q and over the rational-function field."""

from .poly import BigRational, MultiPoly, canonical_vars, exact_div, mv_gcd, mv_lcm, resultant
from .ratfun import MultiRational, RAT_ONE, RAT_ZERO
from .unipoly import XPoly, bezout_cofactors, divmod_x, poly_gcd
from .linalg import RatMatrix, det, inverse, kernel_basis, rank, rank_specialized

__all__ = [
    "BigRational",
    "MultiPoly",
    "MultiRational",
    "RAT_ONE",
    "RAT_ZERO",
    "RatMatrix",
    "XPoly",
    "bezout_cofactors",
    "canonical_vars",
    "det",
    "divmod_x",
    "exact_div",
    "inverse",
    "kernel_basis",
    "mv_gcd",
    "mv_lcm",
    "poly_gcd",
    "rank",
    "rank_specialized",
    "resultant",
]
