"""Stirling permutations of multisets, their descent statistics, Stirling
polynomials, k-Stirling posets and the related generalized Stirling numbers,
all in exact arithmetic."""

from .arith import Polynomial, binomial, interpolate, poly_eval
from .errors import BudgetExceeded, ConsistencyError, InconsistentParameters
from .shapes import Shape, WeightDecomposition, decompose, parse_shape, recompose, sp_count

__all__ = [
    "BudgetExceeded",
    "ConsistencyError",
    "InconsistentParameters",
    "Polynomial",
    "Shape",
    "WeightDecomposition",
    "binomial",
    "decompose",
    "interpolate",
    "parse_shape",
    "poly_eval",
    "recompose",
    "sp_count",
]

__version__ = "0.1.0"
