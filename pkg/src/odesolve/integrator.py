"""Adaptive Runge-Kutta integration of the Wheeler-DeWitt equation."""

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp

from src.config.models import ModelParams, SolverSettings
from src.errors import ConfigurationError, IntegrationError
from src.model.sampled import FloatArray, Grid, SampledFunction

from .frobenius import frobenius_exponents, frobenius_seed

METHOD = "DOP853"


def _rhs_factory(params: ModelParams):  # type: ignore[no-untyped-def]
    """First-order system (u, u')' = (u', (q u' + V u) / A)."""
    c3 = 144.0 * params.kappa
    c5 = 48.0 * params.cc
    cm = 384.0 * params.matter
    p = 2.0 - 3.0 * params.gamma
    q = params.q

    def rhs(a: float, y: FloatArray) -> list[float]:
        v = c3 * a**3 + c5 * a**5 - (cm * a**p if cm else 0.0)
        return [y[1], (q * y[1] + v * y[0]) / a]

    return rhs


def integrate_span(
    params: ModelParams,
    points: FloatArray,
    init_value: float,
    init_deriv: float,
    settings: SolverSettings | None = None,
) -> tuple[FloatArray, FloatArray]:
    """Integrate from points[0] through a monotone sequence of A values.

    The sequence may decrease (backward integration towards the origin).
    Returns (u, u') at every point.
    """
    settings = settings or SolverSettings()
    points = np.asarray(points, dtype=float)
    if points.size < 2:
        raise ConfigurationError("Need at least two points to integrate")
    if np.any(points <= 0):
        raise ConfigurationError("Integration never reaches A = 0; all points must be positive")
    steps = np.diff(points)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ConfigurationError("Integration points must be strictly monotone")

    cap = settings.overflow_cap

    def overflow(a: float, y: FloatArray) -> float:
        return cap - max(abs(y[0]), abs(y[1]))

    overflow.terminal = True  # type: ignore[attr-defined]

    sol = solve_ivp(
        _rhs_factory(params),
        (float(points[0]), float(points[-1])),
        [float(init_value), float(init_deriv)],
        method=METHOD,
        t_eval=points,
        rtol=settings.rtol,
        atol=settings.atol,
        events=overflow,
    )

    last_good = float(sol.t[-1]) if sol.t.size else float(points[0])

    if sol.status == 1:
        hit = float(sol.t_events[0][0]) if len(sol.t_events[0]) else last_good
        raise IntegrationError(f"|u| exceeded {cap:g}", last_good=hit)
    if sol.status != 0 or sol.y.shape[1] != points.size:
        raise IntegrationError(f"Integration failed: {sol.message}", last_good=last_good)
    if not np.all(np.isfinite(sol.y)):
        raise IntegrationError("Integration produced non-finite values", last_good=last_good)

    return sol.y[0], sol.y[1]


def integrate(
    params: ModelParams,
    grid: Grid,
    init_value: float,
    init_deriv: float,
    settings: SolverSettings | None = None,
) -> SampledFunction:
    """Solve the Wheeler-DeWitt equation on ``grid`` from (u, u') given at grid.points[0]."""
    values, derivs = integrate_span(params, grid.points, init_value, init_deriv, settings)
    return SampledFunction(grid, values, derivs)


@dataclass(frozen=True)
class SolutionBasis:
    """Two independent solutions and the coefficients of their superposition."""

    u1: SampledFunction
    u2: SampledFunction
    c1: float = 1.0
    c2: float = 0.0

    def __post_init__(self) -> None:
        if not np.array_equal(self.u1.points, self.u2.points):
            raise ConfigurationError("Basis solutions must share one grid")

    @property
    def grid(self) -> Grid:
        return self.u1.grid

    def combined(self) -> SampledFunction:
        """c1 u1 + c2 u2."""
        return self.u1.scaled(self.c1) + self.u2.scaled(self.c2)

    def wronskian(self, q: float) -> FloatArray:
        """Generalized Wronskian A^(-q) (u1 u2' - u1' u2); constant for true solutions."""
        raw = self.u1.values * self.u2.derivs - self.u1.derivs * self.u2.values
        return self.grid.power(-q) * raw

    def fit(self, target: SampledFunction, indices: FloatArray | None = None) -> "SolutionBasis":
        """Least-squares coefficients reproducing ``target`` at ``indices``."""
        idx = np.arange(len(self.grid)) if indices is None else np.asarray(indices, dtype=int)
        design = np.column_stack([self.u1.values[idx], self.u2.values[idx]])
        coeffs, *_ = np.linalg.lstsq(design, target.values[idx], rcond=None)
        return replace(self, c1=float(coeffs[0]), c2=float(coeffs[1]))


def solve_basis(
    params: ModelParams,
    grid: Grid,
    settings: SolverSettings | None = None,
) -> SolutionBasis:
    """Two solutions seeded by the two Frobenius behaviours at grid.points[0]."""
    frobenius_exponents(params)
    a0 = grid.a_min
    solutions = []
    for which in (0, 1):
        value, deriv = frobenius_seed(params, a0, which)
        solutions.append(integrate(params, grid, value, deriv, settings))
    return SolutionBasis(solutions[0], solutions[1])
