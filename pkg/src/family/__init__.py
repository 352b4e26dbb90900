"""The one-parameter isospectral family built from a seed solution."""

from .integral import cumulative_integral
from .member import (
    FamilyMember,
    bernoulli_residual,
    bernoulli_solution,
    build_member,
    check_lambdas,
    expanded_family_potential,
    family_potential,
    family_potential_gap,
    family_wavefunction,
    g_lambda,
    shifted_superpotential,
    sweep_family,
    verify_family_member,
)

__all__ = [
    "FamilyMember",
    "bernoulli_residual",
    "bernoulli_solution",
    "build_member",
    "check_lambdas",
    "cumulative_integral",
    "expanded_family_potential",
    "family_potential",
    "family_potential_gap",
    "family_wavefunction",
    "g_lambda",
    "shifted_superpotential",
    "sweep_family",
    "verify_family_member",
]
