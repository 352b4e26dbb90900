"""Closed forms for the inflationary fluid (gamma = -1).

With gamma = -1 the matter term and the cosmological constant combine,
V = 144 kappa A^3 - 144 m^2 A^5, so the solutions are parameterized by m^2.
The bracket is 144 A^3 (kappa - m^2 A^2); kappa enters once, as the sign
of the curvature, and never multiplies the m^2 term.
"""

import numpy as np

from src.config.models import ModelParams
from src.errors import DomainError, TurningPointError
from src.model.sampled import FloatArray
from src.specfun.bessel import BesselKind, Kind

from .base import CaseId, as_points, bessel_pair, finish, m_squared, require

TURNING_DELTA = 1e-6

THIRD = 1.0 / 3.0


def _turning_variable(
    a: FloatArray, scale: float, shift: float, delta: float
) -> FloatArray:
    """v = scale A^2 + shift, checked to stay above ``delta``."""
    v = scale * a**2 + shift
    bad = v <= delta
    if np.any(bad):
        raise TurningPointError(
            f"Closed form needs {scale:g} A^2 + {shift:g} > {delta:g}; "
            f"violated for A <= {float(np.max(a[bad])):.6g}"
        )
    return v


def _airy_like(
    a: FloatArray,
    scale: float,
    v: FloatArray,
    coeffs: tuple[float, float],
    first: BesselKind,
    second: BesselKind,
) -> tuple[FloatArray, FloatArray]:
    """u = sqrt(v) Z(z) with z = (4/scale) v^(3/2) and dz/dA = 12 A sqrt(v)."""
    root = np.sqrt(v)
    z = 4.0 / scale * v * root
    bracket, slope = bessel_pair(coeffs, first, second, z)
    u = root * bracket
    du = scale * a * bracket / root + 12.0 * a * v * slope
    return u, du


def inflation_mpos(
    params: ModelParams,
    coeffs: tuple[float, float],
    a: float | FloatArray,
    delta: float = TURNING_DELTA,
) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
    """u = (m^2 A^2 - kappa)^(1/2) [a0 J_(1/3)(z) + b0 J_(-1/3)(z)].

    z = (4/m^2)(m^2 A^2 - kappa)^(3/2). Valid above the turning point
    m^2 A^2 = kappa only.
    """
    require(params, CaseId.INFLATION_M_POS)
    pts, scalar = as_points(a)
    msq = m_squared(params)
    v = _turning_variable(pts, msq, -float(params.kappa), delta)
    u, du = _airy_like(
        pts, msq, v, coeffs, BesselKind(Kind.J, THIRD), BesselKind(Kind.J, -THIRD)
    )
    return finish(u, du, scalar)


def inflation_mneg(
    params: ModelParams,
    coeffs: tuple[float, float],
    a: float | FloatArray,
    delta: float = TURNING_DELTA,
) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
    """u = (|m^2| A^2 + kappa)^(1/2) [a1 I_(1/3)(z) + b1 K_(1/3)(z)].

    z = (4/|m^2|)(|m^2| A^2 + kappa)^(3/2).
    """
    require(params, CaseId.INFLATION_M_NEG)
    pts, scalar = as_points(a)
    msq = abs(m_squared(params))
    v = _turning_variable(pts, msq, float(params.kappa), delta)
    u, du = _airy_like(
        pts, msq, v, coeffs, BesselKind(Kind.I, THIRD), BesselKind(Kind.K, THIRD)
    )
    return finish(u, du, scalar)


def inflation_mzero(
    params: ModelParams,
    coeffs: tuple[float, float],
    a: float | FloatArray,
) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
    """m^2 = 0: u = A^(2 nu) Z_nu(6 A^2) with nu = (1 + q)/4.

    kappa = +1 uses I_nu, K_nu; kappa = -1 uses J_nu, Y_nu. For kappa = 0 the
    equation reduces to A u'' = q u' and u = c1 + c2 A^(1 + q).
    """
    case = require(
        params,
        CaseId.INFLATION_M_ZERO_CLOSED,
        CaseId.INFLATION_M_ZERO_OPEN,
        CaseId.INFLATION_M_ZERO_FLAT,
    )
    pts, scalar = as_points(a)
    c1, c2 = coeffs
    q = params.q

    if case is CaseId.INFLATION_M_ZERO_FLAT:
        u = c1 + c2 * pts ** (1.0 + q)
        du = c2 * (1.0 + q) * pts**q
        return finish(np.asarray(u, dtype=float), np.asarray(du, dtype=float), scalar)

    nu = (1.0 + q) / 4.0
    if nu <= 0:
        raise DomainError(f"Bessel order nu = (1 + q)/4 must be positive, got {nu:g}")

    if case is CaseId.INFLATION_M_ZERO_CLOSED:
        first, second = BesselKind(Kind.I, nu), BesselKind(Kind.K, nu)
    else:
        first, second = BesselKind(Kind.J, nu), BesselKind(Kind.Y, nu)

    bracket, slope = bessel_pair(coeffs, first, second, 6.0 * pts**2)
    prefactor = pts ** (2.0 * nu)
    u = prefactor * bracket
    du = 2.0 * nu * prefactor / pts * bracket + 12.0 * prefactor * pts * slope
    return finish(u, du, scalar)
