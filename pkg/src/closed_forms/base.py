"""Closed-form case identifiers, their parameter requirements and classification."""

import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.config.models import ModelParams
from src.errors import ConfigurationError, DomainError
from src.model.sampled import FloatArray
from src.specfun.bessel import BesselKind, bessel, bessel_derivative

PARAM_TOL = 1e-12


class CaseId(str, Enum):
    """Parameter regimes that have closed-form solutions."""

    INFLATION_M_POS = "InflationMPos"
    INFLATION_M_NEG = "InflationMNeg"
    INFLATION_M_ZERO_CLOSED = "InflationMZeroClosed"
    INFLATION_M_ZERO_OPEN = "InflationMZeroOpen"
    INFLATION_M_ZERO_FLAT = "InflationMZeroFlat"
    DUST_FLAT = "DustFlat"
    STIFF_FLAT = "StiffFlat"


def m_squared(params: ModelParams) -> float:
    """m^2 = -Lambda/3 + (8/3) matter."""
    return params.m_squared


def _is(value: float, target: float) -> bool:
    return math.isclose(value, target, rel_tol=0.0, abs_tol=PARAM_TOL)


def _inflation(params: ModelParams) -> bool:
    return _is(params.gamma, -1.0)


def _m_zero(params: ModelParams) -> bool:
    return _inflation(params) and _is(m_squared(params), 0.0)


@dataclass(frozen=True)
class CaseRequirement:
    """Human-readable requirement plus the predicate enforcing it."""

    description: str
    holds: Callable[[ModelParams], bool]


CASE_REQUIREMENTS: dict[CaseId, CaseRequirement] = {
    CaseId.INFLATION_M_POS: CaseRequirement(
        "gamma = -1, q = 1, m^2 > 0",
        lambda p: _inflation(p) and _is(p.q, 1.0) and m_squared(p) > PARAM_TOL,
    ),
    CaseId.INFLATION_M_NEG: CaseRequirement(
        "gamma = -1, q = 1, m^2 < 0",
        lambda p: _inflation(p) and _is(p.q, 1.0) and m_squared(p) < -PARAM_TOL,
    ),
    CaseId.INFLATION_M_ZERO_CLOSED: CaseRequirement(
        "gamma = -1, m^2 = 0, kappa = +1, q > -1",
        lambda p: _m_zero(p) and p.kappa == 1 and p.q > -1.0,
    ),
    CaseId.INFLATION_M_ZERO_OPEN: CaseRequirement(
        "gamma = -1, m^2 = 0, kappa = -1, q > -1",
        lambda p: _m_zero(p) and p.kappa == -1 and p.q > -1.0,
    ),
    CaseId.INFLATION_M_ZERO_FLAT: CaseRequirement(
        "gamma = -1, m^2 = 0, kappa = 0",
        lambda p: _m_zero(p) and p.kappa == 0,
    ),
    CaseId.DUST_FLAT: CaseRequirement(
        "gamma = 0, kappa = 0, Lambda != 0",
        lambda p: _is(p.gamma, 0.0) and p.kappa == 0 and not _is(p.cc, 0.0),
    ),
    CaseId.STIFF_FLAT: CaseRequirement(
        "gamma = 1, kappa = 0, Lambda != 0",
        lambda p: _is(p.gamma, 1.0) and p.kappa == 0 and not _is(p.cc, 0.0),
    ),
}


def classify(params: ModelParams) -> CaseId | None:
    """The closed-form case covering ``params``, or None."""
    for case_id, requirement in CASE_REQUIREMENTS.items():
        if requirement.holds(params):
            return case_id
    return None


def require(params: ModelParams, *case_ids: CaseId) -> CaseId:
    """Return the first of ``case_ids`` that ``params`` satisfies, else raise."""
    for case_id in case_ids:
        if CASE_REQUIREMENTS[case_id].holds(params):
            return case_id
    wanted = " or ".join(CASE_REQUIREMENTS[c].description for c in case_ids)
    raise ConfigurationError(f"Parameters {params.model_dump()} do not satisfy {wanted}")


def as_points(a: float | FloatArray) -> tuple[FloatArray, bool]:
    """Evaluation points as a float array plus a flag for scalar input."""
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("Closed forms are evaluated at A > 0 only")
    return np.atleast_1d(arr), arr.ndim == 0


def finish(
    u: FloatArray, du: FloatArray, scalar: bool
) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
    if scalar:
        return float(u[0]), float(du[0])
    return u, du


def bessel_pair(
    coeffs: tuple[float, float],
    first: BesselKind,
    second: BesselKind,
    z: FloatArray,
) -> tuple[FloatArray, FloatArray]:
    """c1 Z1(z) + c2 Z2(z) and its z-derivative; a zero coefficient skips its function."""
    total = np.zeros_like(z)
    slope = np.zeros_like(z)
    for coeff, kind in zip(coeffs, (first, second), strict=True):
        if coeff == 0.0:
            continue
        total = total + coeff * np.asarray(bessel(kind, z))
        slope = slope + coeff * np.asarray(bessel_derivative(kind, z))
    return total, slope
