"""First-order factors A- and A+ of the Wheeler-DeWitt Hamiltonian."""

import numpy as np

from src.config.models import ModelParams
from src.errors import ConfigurationError
from src.model.hamiltonian import apply_Hplus
from src.model.sampled import INTERIOR, SampledFunction, max_relative

from .superpotential import SuperpotentialField, riccati_potential


def _check_grid(w: SuperpotentialField, f: SampledFunction) -> None:
    if f.grid is not w.grid and not np.array_equal(f.points, w.points):
        raise ConfigurationError("Operand and superpotential live on different grids")


def apply_Aminus(
    params: ModelParams, w: SuperpotentialField, f: SampledFunction
) -> SampledFunction:
    """A- f = A^(-q) f' + W f."""
    _check_grid(w, f)
    values = w.grid.power(-params.q) * f.derivs + w.values * f.values
    return SampledFunction.from_values(w.grid, values)


def apply_Aplus(
    params: ModelParams, w: SuperpotentialField, f: SampledFunction
) -> SampledFunction:
    """A+ f = -A^(-q) f' + W f."""
    _check_grid(w, f)
    values = -w.grid.power(-params.q) * f.derivs + w.values * f.values
    return SampledFunction.from_values(w.grid, values)


def apply_Hminus(
    params: ModelParams, w: SuperpotentialField, f: SampledFunction
) -> SampledFunction:
    """H- = A- A+ (composition only)."""
    return apply_Aminus(params, w, apply_Aplus(params, w, f))


def partner_zero_mode(u: SampledFunction) -> SampledFunction:
    """1/u, annihilated by A+ and hence by H-."""
    return u.reciprocal()


def second_partner_mode(
    params: ModelParams, w: SuperpotentialField, u2: SampledFunction
) -> SampledFunction:
    """A- u2 for a second solution u2; proportional to 1/u by Wronskian constancy."""
    return apply_Aminus(params, w, u2)


def annihilation_residual(
    params: ModelParams, w: SuperpotentialField, f: SampledFunction, sign: int = 1
) -> float:
    """Relative size of A- f (sign=+1) or A+ f (sign=-1) against its two terms."""
    _check_grid(w, f)
    kinetic = sign * w.grid.power(-params.q) * f.derivs
    shift = w.values * f.values
    return max_relative(
        (kinetic + shift)[INTERIOR], (np.abs(kinetic) + np.abs(shift))[INTERIOR]
    )


def factorization_defect(
    params: ModelParams, w: SuperpotentialField, f: SampledFunction
) -> float:
    """sup |A+ A- f - H+ f| / sup |H+ terms| with V+ from the Riccati equation."""
    composed = apply_Aplus(params, w, apply_Aminus(params, w, f))
    v_plus = riccati_potential(params, w)
    direct = apply_Hplus(params, f, pot=v_plus)

    grid = f.grid
    q = params.q
    scale = (
        np.abs(grid.power(-2.0 * q) * f.second_derivative())
        + np.abs(q * grid.power(-1.0 - 2.0 * q) * f.derivs)
        + np.abs(grid.power(-1.0 - 2.0 * q) * v_plus.values * f.values)
    )
    diff = np.abs(composed.values - direct.values)[INTERIOR]
    top = float(np.max(scale[INTERIOR]))
    return float(np.max(diff)) / top if top > 0 else float(np.max(diff))
