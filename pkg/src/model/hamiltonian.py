"""The Wheeler-DeWitt potential and the operators H0 and H+."""

import numpy as np

from src.config.models import ModelParams
from src.errors import ConfigurationError, NumericRangeError

from .sampled import INTERIOR, FloatArray, Grid, SampledFunction, differentiate, max_relative


def potential(params: ModelParams, a: float | FloatArray) -> float | FloatArray:
    """V(A) = 144 kappa A^3 + 48 Lambda A^5 - 384 pi G M A^(2 - 3 gamma)."""
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr <= 0):
        raise ConfigurationError("potential is defined for A > 0 only")

    with np.errstate(over="ignore", invalid="ignore"):
        value = (
            144.0 * params.kappa * a_arr**3
            + 48.0 * params.cc * a_arr**5
            - 384.0 * params.matter * a_arr ** (2.0 - 3.0 * params.gamma)
        )

    if not np.all(np.isfinite(value)):
        raise NumericRangeError(f"V(A) overflows for A up to {np.max(a_arr):g}")

    if np.ndim(value) == 0:
        return float(value)
    return value


def potential_samples(params: ModelParams, grid: Grid) -> FloatArray:
    """V sampled on a grid."""
    return np.asarray(potential(params, grid.points), dtype=float)


def _potential_array(
    params: ModelParams, grid: Grid, override: SampledFunction | FloatArray | None
) -> FloatArray:
    if override is None:
        return potential_samples(params, grid)
    values = override.values if isinstance(override, SampledFunction) else override
    values = np.asarray(values, dtype=float)
    if values.shape != grid.points.shape:
        raise ConfigurationError("Potential override does not match the grid")
    return values


def _h0_terms(
    params: ModelParams,
    f: SampledFunction,
    pot: SampledFunction | FloatArray | None = None,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    """The three terms -A f'', q f' and V f of H0."""
    a = f.points
    v = _potential_array(params, f.grid, pot)
    return -a * f.second_derivative(), params.q * f.derivs, v * f.values


def apply_H0(
    params: ModelParams,
    f: SampledFunction,
    pot: SampledFunction | FloatArray | None = None,
) -> SampledFunction:
    """H0 f = -A f'' + q f' + V f.

    ``pot`` replaces the model potential V(A) when given (e.g. a family potential).
    """
    kinetic, drift, pot_term = _h0_terms(params, f, pot)
    return SampledFunction.from_values(f.grid, kinetic + drift + pot_term)


def apply_Hplus(
    params: ModelParams,
    f: SampledFunction,
    pot: SampledFunction | FloatArray | None = None,
) -> SampledFunction:
    """H+ f = -A^(-2q) f'' + q A^(-1-2q) f' + A^(-1-2q) V f."""
    grid = f.grid
    v = _potential_array(params, grid, pot)
    q = params.q
    values = (
        -grid.power(-2.0 * q) * f.second_derivative()
        + q * grid.power(-1.0 - 2.0 * q) * f.derivs
        + grid.power(-1.0 - 2.0 * q) * v * f.values
    )
    return SampledFunction.from_values(grid, values)


def h0_residual(
    params: ModelParams,
    f: SampledFunction,
    pot: SampledFunction | FloatArray | None = None,
) -> float:
    """Max relative residual |H0 f| / (|A f''| + |q f'| + |V f|) over the interior."""
    kinetic, drift, pot_term = _h0_terms(params, f, pot)
    residual = kinetic + drift + pot_term
    scale = np.abs(kinetic) + np.abs(drift) + np.abs(pot_term)
    return max_relative(residual[INTERIOR], scale[INTERIOR])


def ordering_identity_check(params: ModelParams, f: SampledFunction) -> float:
    """Max-norm gap between the two sides of the factor-ordering expansion.

    Left: A^(-1+q) d/dA (A^(-q) f'); right: A^(-1) (f'' - q A^(-1) f').
    Evaluated over the stencil interior, relative to sup |right| when that
    is non-zero.
    """
    grid = f.grid
    q = params.q
    inner = grid.power(-q) * f.derivs
    left = grid.power(-1.0 + q) * differentiate(grid, inner)
    right = (f.second_derivative() - q * f.derivs / grid.points) / grid.points
    gap = float(np.max(np.abs(left - right)[INTERIOR]))
    top = float(np.max(np.abs(right)[INTERIOR]))
    return gap / top if top > 0 else gap
