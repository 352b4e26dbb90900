"""Superpotential of a seed solution and the potentials it generates."""

from dataclasses import dataclass

import numpy as np

from src.config.models import ModelParams, SolverSettings
from src.errors import InternalConsistencyError, NodeInDomainError
from src.model.hamiltonian import potential_samples
from src.model.sampled import (
    INTERIOR,
    MIN_POINTS,
    FloatArray,
    SampledFunction,
    differentiate,
    max_relative,
)

# V- computed two ways must agree to rounding
PARTNER_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SuperpotentialField(SampledFunction):
    """W(A) and W'(A) on a node-free grid of the seed named by ``seed_ref``."""

    seed_ref: str = "seed"


def _zero_mask(u: SampledFunction, node_tol: float) -> FloatArray:
    return np.abs(u.values) <= node_tol * u.sup_norm()


def find_nodes(u: SampledFunction, node_tol: float = 1e-10) -> list[tuple[int, int]]:
    """Index pairs bracketing every sign change or near-zero sample of ``u``."""
    zero = _zero_mask(u, node_tol)
    sign = np.sign(u.values)
    brackets: list[tuple[int, int]] = [(int(i), int(i)) for i in np.flatnonzero(zero)]
    flips = np.flatnonzero((sign[:-1] * sign[1:] < 0) & ~zero[:-1] & ~zero[1:])
    brackets.extend((int(i), int(i) + 1) for i in flips)
    return sorted(brackets)


def node_free_intervals(
    u: SampledFunction, settings: SolverSettings | None = None
) -> list[tuple[int, int]]:
    """Maximal index ranges [start, stop) on which ``u`` keeps one sign.

    Each range loses ``node_margin`` of its length on every side that
    borders a node; ranges left with fewer than MIN_POINTS samples are dropped.
    """
    settings = settings or SolverSettings()
    zero = _zero_mask(u, settings.node_tol)
    sign = np.where(zero, 0.0, np.sign(u.values))
    n = len(u.grid)

    runs: list[tuple[int, int]] = []
    start: int | None = None
    for i in range(n):
        if sign[i] == 0:
            if start is not None:
                runs.append((start, i))
                start = None
            continue
        if start is None:
            start = i
        elif sign[i] != sign[i - 1]:
            runs.append((start, i))
            start = i
    if start is not None:
        runs.append((start, n))

    intervals = []
    for lo, hi in runs:
        cut = int(settings.node_margin * (hi - lo))
        lo_t = lo + cut if lo > 0 else lo
        hi_t = hi - cut if hi < n else hi
        if hi_t - lo_t >= MIN_POINTS:
            intervals.append((lo_t, hi_t))
    return intervals


def superpotential_from_seed(
    params: ModelParams,
    u: SampledFunction,
    seed_ref: str = "seed",
    node_tol: float = 1e-10,
) -> SuperpotentialField:
    """W = -A^(-q) u'/u; W' from the derivative stencil applied to W."""
    brackets = find_nodes(u, node_tol)
    if brackets:
        raise NodeInDomainError(brackets)
    grid = u.grid
    w = -grid.power(-params.q) * u.derivs / u.values
    return SuperpotentialField(grid, w, differentiate(grid, w), seed_ref=seed_ref)


def riccati_potential(params: ModelParams, w: SuperpotentialField) -> SampledFunction:
    """V+ = A^(1+2q) W^2 - A^(1+q) W'."""
    grid = w.grid
    q = params.q
    values = grid.power(1.0 + 2.0 * q) * w.values**2 - grid.power(1.0 + q) * w.derivs
    return SampledFunction.from_values(grid, values)


def partner_potential(params: ModelParams, w: SuperpotentialField) -> SampledFunction:
    """V- = A^(1+2q) W^2 + A^(1+q) W', cross-checked against V+ + 2 A^(1+q) W'."""
    grid = w.grid
    q = params.q
    square = grid.power(1.0 + 2.0 * q) * w.values**2
    slope = grid.power(1.0 + q) * w.derivs
    direct = square + slope
    shifted = riccati_potential(params, w).values + 2.0 * slope
    gap = max_relative(direct - shifted, np.abs(square) + np.abs(slope))
    if gap > PARTNER_TOL:
        raise InternalConsistencyError(f"V- routes disagree by {gap:.3e}")
    return SampledFunction.from_values(grid, direct)


def riccati_closure(params: ModelParams, w: SuperpotentialField) -> float:
    """Relative gap between V+ rebuilt from W and the model potential, over the interior."""
    grid = w.grid
    q = params.q
    square = grid.power(1.0 + 2.0 * q) * w.values**2
    slope = grid.power(1.0 + q) * w.derivs
    gap = square - slope - potential_samples(params, grid)
    return max_relative(gap[INTERIOR], (np.abs(square) + np.abs(slope))[INTERIOR])
