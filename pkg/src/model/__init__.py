"""Wheeler-DeWitt model: grids, sampled functions, potential and operators."""

from src.config.models import ModelParams

from .hamiltonian import (
    apply_H0,
    apply_Hplus,
    h0_residual,
    ordering_identity_check,
    potential,
    potential_samples,
)
from .sampled import INTERIOR, Grid, SampledFunction, differentiate, max_relative

__all__ = [
    "ModelParams",
    "Grid",
    "SampledFunction",
    "INTERIOR",
    "differentiate",
    "max_relative",
    "potential",
    "potential_samples",
    "apply_H0",
    "apply_Hplus",
    "h0_residual",
    "ordering_identity_check",
]
