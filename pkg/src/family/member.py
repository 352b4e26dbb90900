"""The strictly isospectral family generated by a seed solution."""

import asyncio
import math
from dataclasses import dataclass

import numpy as np

from src.config.models import ModelParams, SolverSettings
from src.errors import (
    ConfigurationError,
    InternalConsistencyError,
    LambdaDomainError,
    NodeInDomainError,
)
from src.model.hamiltonian import h0_residual, potential_samples
from src.model.sampled import INTERIOR, FloatArray, SampledFunction, differentiate, max_relative
from src.susy.superpotential import (
    SuperpotentialField,
    find_nodes,
    superpotential_from_seed,
)


def g_lambda(lam: float) -> float:
    """g = sqrt(lambda (lambda + 1)); real only outside (-1, 0)."""
    if -1.0 < lam < 0.0:
        raise LambdaDomainError("g(lambda) = sqrt(lambda(lambda+1)) is imaginary", [lam])
    return math.sqrt(lam * (lam + 1.0))


def check_lambdas(
    lambdas: list[float],
    i_gamma: SampledFunction | None = None,
    allow_negative: bool = False,
) -> None:
    """Reject every lambda outside the admissible set, all at once.

    lambda >= 0 needs I + lambda > 0 on the grid. lambda <= -1 - I(A_max)
    is accepted only with ``allow_negative``; lambda in (-1, 0) never is.
    """
    imaginary = [lam for lam in lambdas if -1.0 < lam < 0.0]
    if imaginary:
        raise LambdaDomainError("g(lambda) is imaginary for lambda in (-1, 0)", imaginary)

    negative = [lam for lam in lambdas if lam <= -1.0]
    if negative and not allow_negative:
        raise LambdaDomainError(
            "Negative lambda requires --allow-negative-lambda", negative
        )

    if i_gamma is None:
        return

    i_low = float(i_gamma.values[0])
    i_high = float(i_gamma.values[-1])
    offending = [
        lam
        for lam in lambdas
        if (lam >= 0.0 and i_low + lam <= 0.0) or (lam <= -1.0 and lam > -1.0 - i_high)
    ]
    if offending:
        raise LambdaDomainError(
            f"I + lambda changes sign or vanishes on the grid (I spans "
            f"[{i_low:.6g}, {i_high:.6g}])",
            offending,
        )


def _denominator(i_gamma: SampledFunction, lam: float) -> FloatArray:
    denom = i_gamma.values + lam
    if not (np.all(denom > 0) or np.all(denom < 0)):
        raise LambdaDomainError("I + lambda changes sign or vanishes on the grid", [lam])
    return denom


def _same_grid(*functions: SampledFunction) -> None:
    first = functions[0]
    for other in functions[1:]:
        if other.grid is not first.grid and not np.array_equal(other.points, first.points):
            raise ConfigurationError("Family inputs must share one grid")


def bernoulli_solution(
    params: ModelParams,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lam: float,
) -> SampledFunction:
    """y = (I + lambda)/u^2 with analytic derivative I'/u^2 - 2 (I + lambda) u'/u^3."""
    _same_grid(u, i_gamma)
    brackets = find_nodes(u)
    if brackets:
        raise NodeInDomainError(brackets)
    denom = _denominator(i_gamma, lam)
    y = denom / u.values**2
    dy = i_gamma.derivs / u.values**2 - 2.0 * denom * u.derivs / u.values**3
    return SampledFunction(u.grid, y, dy)


def bernoulli_residual(
    params: ModelParams, w: SuperpotentialField, y: SampledFunction
) -> float:
    """Relative residual of y' - 2 W A^q y = A^q with y' from the stencil."""
    grid = y.grid
    aq = grid.power(params.q)
    slope = differentiate(grid, y.values)
    drift = 2.0 * w.values * aq * y.values
    residual = slope - drift - aq
    scale = np.abs(slope) + np.abs(drift) + aq
    return max_relative(residual[INTERIOR], scale[INTERIOR])


def shifted_superpotential(
    w: SuperpotentialField,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lam: float,
) -> SuperpotentialField:
    """W^ = W + u^2/(I + lambda), derivative using I' = A^q u^2."""
    _same_grid(w, u, i_gamma)
    denom = _denominator(i_gamma, lam)
    u2 = u.values**2
    values = w.values + u2 / denom
    derivs = w.derivs + (2.0 * u.values * u.derivs * denom - i_gamma.derivs * u2) / denom**2
    return SuperpotentialField(w.grid, values, derivs, seed_ref=f"{w.seed_ref}|lambda={lam:g}")


def expanded_family_potential(
    params: ModelParams,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lam: float,
    v_plus: SampledFunction | None = None,
) -> SampledFunction:
    """V^+ = V+ - 4 A^(1+q) u u'/(I+lambda) + 2 A^(1+2q) u^4/(I+lambda)^2.

    Regular at nodes of u. V+ defaults to the model potential.
    """
    _same_grid(u, i_gamma)
    grid = u.grid
    q = params.q
    denom = _denominator(i_gamma, lam)
    base = potential_samples(params, grid) if v_plus is None else v_plus.values
    values = (
        base
        - 4.0 * grid.power(1.0 + q) * u.values * u.derivs / denom
        + 2.0 * grid.power(1.0 + 2.0 * q) * u.values**4 / denom**2
    )
    return SampledFunction.from_values(grid, values)


def _riccati_terms(
    params: ModelParams, w_hat: SuperpotentialField
) -> tuple[FloatArray, FloatArray]:
    grid = w_hat.grid
    q = params.q
    return grid.power(1.0 + 2.0 * q) * w_hat.values**2, grid.power(1.0 + q) * w_hat.derivs


def family_potential_gap(
    params: ModelParams,
    w_hat: SuperpotentialField,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lam: float,
    v_plus: SampledFunction | None = None,
) -> float:
    """Relative interior gap between V^+ from W^ and the expanded form."""
    _same_grid(w_hat, u, i_gamma)
    square, slope = _riccati_terms(params, w_hat)
    expanded = expanded_family_potential(params, u, i_gamma, lam, v_plus)
    return max_relative(
        (square - slope - expanded.values)[INTERIOR],
        (np.abs(square) + np.abs(slope))[INTERIOR],
    )


def family_potential(
    params: ModelParams,
    w: SuperpotentialField,
    w_hat: SuperpotentialField,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lam: float,
    v_plus: SampledFunction | None = None,
    tolerance: float = 1e-6,
) -> SampledFunction:
    """V^+ = A^(1+2q) W^^2 - A^(1+q) W^', cross-checked against the expanded form."""
    _same_grid(w, w_hat, u, i_gamma)
    gap = family_potential_gap(params, w_hat, u, i_gamma, lam, v_plus)
    if gap > tolerance:
        raise InternalConsistencyError(
            f"Family potential routes disagree by {gap:.3e} at lambda = {lam:g} "
            f"(tolerance {tolerance:g})"
        )
    square, slope = _riccati_terms(params, w_hat)
    return SampledFunction.from_values(w_hat.grid, square - slope)


def family_wavefunction(
    u: SampledFunction, i_gamma: SampledFunction, lam: float
) -> SampledFunction:
    """u^ = g(lambda) u/(I + lambda).

    For lambda -> +inf u^ -> u; for admissible negative lambda I + lambda < 0
    and u^ -> -u.
    """
    _same_grid(u, i_gamma)
    g = g_lambda(lam)
    denom = _denominator(i_gamma, lam)
    values = g * u.values / denom
    derivs = g * (u.derivs * denom - u.values * i_gamma.derivs) / denom**2
    return SampledFunction(u.grid, values, derivs)


@dataclass(frozen=True, eq=False)
class FamilyMember:
    """One member of the isospectral family.

    ``w_hat`` is None when the seed has nodes on the grid; ``v_hat`` then
    comes from the expanded form.
    """

    lambda_param: float
    w_hat: SuperpotentialField | None
    v_hat: SampledFunction
    u_hat: SampledFunction
    i_gamma: SampledFunction


def build_member(
    params: ModelParams,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lam: float,
    settings: SolverSettings | None = None,
    allow_negative: bool = False,
    w: SuperpotentialField | None = None,
) -> FamilyMember:
    """Assemble the family member for ``lam`` over a fixed seed."""
    settings = settings or SolverSettings()
    check_lambdas([lam], i_gamma, allow_negative)
    u_hat = family_wavefunction(u, i_gamma, lam)

    if find_nodes(u, settings.node_tol):
        v_hat = expanded_family_potential(params, u, i_gamma, lam)
        return FamilyMember(lam, None, v_hat, u_hat, i_gamma)

    w = w or superpotential_from_seed(params, u, node_tol=settings.node_tol)
    w_hat = shifted_superpotential(w, u, i_gamma, lam)
    v_hat = family_potential(
        params, w, w_hat, u, i_gamma, lam, tolerance=settings.family_tolerance
    )
    return FamilyMember(lam, w_hat, v_hat, u_hat, i_gamma)


def verify_family_member(params: ModelParams, member: FamilyMember) -> float:
    """Relative residual of -A u^'' + q u^' + V^+ u^ over the interior."""
    return h0_residual(params, member.u_hat, pot=member.v_hat)


async def sweep_family(
    params: ModelParams,
    u: SampledFunction,
    i_gamma: SampledFunction,
    lambdas: list[float],
    settings: SolverSettings | None = None,
    allow_negative: bool = False,
) -> list[FamilyMember]:
    """Build members for all ``lambdas`` concurrently, in input order."""
    settings = settings or SolverSettings()
    check_lambdas(lambdas, i_gamma, allow_negative)
    w = None
    if not find_nodes(u, settings.node_tol):
        w = superpotential_from_seed(params, u, node_tol=settings.node_tol)

    tasks = [
        asyncio.to_thread(build_member, params, u, i_gamma, lam, settings, allow_negative, w)
        for lam in lambdas
    ]
    return list(await asyncio.gather(*tasks))
