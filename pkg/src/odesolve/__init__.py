"""Numerical solution of the Wheeler-DeWitt equation."""

from .frobenius import frobenius_exponents, frobenius_seed
from .integrator import SolutionBasis, integrate, integrate_span, solve_basis

__all__ = [
    "frobenius_exponents",
    "frobenius_seed",
    "integrate",
    "integrate_span",
    "solve_basis",
    "SolutionBasis",
]
