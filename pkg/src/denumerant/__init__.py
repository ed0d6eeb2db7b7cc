"""Exact quasi-polynomial formulas for Sylvester's denumerant."""

from .knapsack import compute_Emf, ct_knapsack, fset, moebius, oracle_count
from .stepquasi import QuasiPolynomial, StepPoly

__all__ = ["QuasiPolynomial", "StepPoly", "compute_Emf", "ct_knapsack", "fset", "moebius", "oracle_count"]
__version__ = "0.1.0"
