"""The cumulative integral I(A) = int_0^A x^q u(x)^2 dx of a seed solution."""

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from src.config.models import ModelParams, SolverSettings
from src.errors import IntegrabilityError
from src.model.sampled import SampledFunction
from src.odesolve.frobenius import frobenius_exponents
from src.odesolve.integrator import integrate_span

BRIDGE_POINTS = 2001


def _head(params: ModelParams, x0: float, u0: float, du0: float) -> float:
    """int_0^x0 of x^q (c x^r)^2 with c x0^r = u0 and r the matching indicial root."""
    if u0 == 0.0:
        return 0.0
    local = x0 * du0 / u0
    roots = [complex(r).real for r in frobenius_exponents(params)]
    r = min(roots, key=lambda root: abs(root - local))
    power = params.q + 2.0 * r + 1.0
    if power <= 0:
        raise IntegrabilityError(f"x^q u^2 ~ x^{power - 1:g} is not integrable at the origin")
    return u0**2 * x0 ** (params.q + 1.0) / power


def _bridge(
    params: ModelParams, u: SampledFunction, floor: float, settings: SolverSettings
) -> tuple[float, float, float]:
    """Integral over [floor, A_min] of the seed continued backwards, plus (u, u') at floor."""
    a_min = u.grid.a_min
    # Geometric points resolve the origin, uniform ones an oscillating seed near A_min
    mixed = np.union1d(
        np.geomspace(floor, a_min, BRIDGE_POINTS), np.linspace(floor, a_min, BRIDGE_POINTS)
    )
    points = mixed[::-1]
    values, derivs = integrate_span(
        params, points, float(u.values[0]), float(u.derivs[0]), settings
    )
    x = points[::-1]
    integrand = x**params.q * values[::-1] ** 2
    return float(simpson(integrand, x=x)), float(values[-1]), float(derivs[-1])


def cumulative_integral(
    params: ModelParams,
    u: SampledFunction,
    settings: SolverSettings | None = None,
) -> SampledFunction:
    """I on the grid of ``u``; the stored derivative is the integrand A^q u^2.

    The part below the grid is an analytic Frobenius head on [0, head_floor]
    and, when the grid starts above the floor, a backward integration of the
    seed from A_min down to the floor.
    """
    if params.q <= -1.0:
        raise IntegrabilityError(f"I diverges at the origin for q = {params.q:g} <= -1")
    settings = settings or SolverSettings()
    grid = u.grid
    a_min = grid.a_min
    floor = settings.head_floor

    if a_min <= floor:
        offset = _head(params, a_min, float(u.values[0]), float(u.derivs[0]))
    else:
        bridge, u_floor, du_floor = _bridge(params, u, floor, settings)
        offset = _head(params, floor, u_floor, du_floor) + bridge

    integrand = grid.power(params.q) * u.values**2
    running = cumulative_simpson(integrand, x=grid.points, initial=0.0)
    # Simpson panels can dip below zero next to nodes of u
    values = np.maximum.accumulate(offset + running)
    return SampledFunction(grid, values, integrand)
