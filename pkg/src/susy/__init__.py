"""Supersymmetric factorization of the Wheeler-DeWitt operator."""

from .operators import (
    annihilation_residual,
    apply_Aminus,
    apply_Aplus,
    apply_Hminus,
    factorization_defect,
    partner_zero_mode,
    second_partner_mode,
)
from .superpotential import (
    SuperpotentialField,
    find_nodes,
    node_free_intervals,
    partner_potential,
    riccati_closure,
    riccati_potential,
    superpotential_from_seed,
)

__all__ = [
    "SuperpotentialField",
    "annihilation_residual",
    "apply_Aminus",
    "apply_Aplus",
    "apply_Hminus",
    "factorization_defect",
    "find_nodes",
    "node_free_intervals",
    "partner_potential",
    "partner_zero_mode",
    "riccati_closure",
    "riccati_potential",
    "second_partner_mode",
    "superpotential_from_seed",
]
