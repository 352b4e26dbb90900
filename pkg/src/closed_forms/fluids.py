"""Closed forms for flat universes filled with dust (gamma = 0) or stiff matter (gamma = 1)."""

import cmath
import math

import numpy as np

from src.config.models import ModelParams
from src.errors import DegenerateBasisError, ImaginaryOrderError
from src.model.sampled import FloatArray
from src.specfun.bessel import BesselKind, Kind
from src.specfun.hypergeometric import hyp1f1, hyp1f1_derivative

from .base import CaseId, as_points, bessel_pair, finish, require

# mu^2 below this is treated as an imaginary order
ORDER_TOL = 1e-12


def dust_parameters(params: ModelParams) -> tuple[complex, float, complex]:
    """(k, alpha, n) with z = k A^3.

    k = (8/3) sqrt(3 Lambda), alpha = (2 - q)/3 and
    n = alpha/2 - 16 matter / sqrt(3 Lambda). For Lambda < 0 the root is
    imaginary, so k and n are complex with Re n = alpha/2.

    The same sqrt(3 Lambda) enters k and n. With sqrt(-3 Lambda) in n instead,
    n is real exactly when k is imaginary and the result no longer solves
    the equation; the H0 residual tests for both signs of Lambda pin this.
    """
    root = cmath.sqrt(3.0 * params.cc)
    alpha = (2.0 - params.q) / 3.0
    k = 8.0 / 3.0 * root
    n = alpha / 2.0 - 16.0 * params.matter / root
    return k, alpha, n


def _kummer_branch(
    n: complex, b: float, z: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """e^(-z/2) M(n, b; z) and its z-derivative."""
    damp = np.exp(-z / 2.0)
    m = np.asarray(hyp1f1(n, b, z))
    dm = np.asarray(hyp1f1_derivative(n, b, z))
    return damp * m, damp * (dm - m / 2.0)


def dust_flat(
    params: ModelParams,
    coeffs: tuple[float, float],
    a: float | FloatArray,
) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
    """u = e^(-z/2) [A2 M(n, alpha; z) + B2 |z|^(1-alpha) M(n-alpha+1, 2-alpha; z)].

    For Lambda < 0, z is imaginary and both terms are real up to round-off;
    the real part is returned.
    """
    require(params, CaseId.DUST_FLAT)
    pts, scalar = as_points(a)
    k, alpha, n = dust_parameters(params)

    if float(alpha).is_integer():
        raise DegenerateBasisError(
            f"alpha = (2 - q)/3 = {alpha:g} is an integer; the two 1F1 branches coincide"
        )

    real_k = k.imag == 0
    k_abs = abs(k)
    cubes = pts**3
    x = k_abs * cubes
    if real_k:
        z: FloatArray = k.real * cubes
        dz = 3.0 * k.real * pts**2
        n_eff: complex | float = n.real
    else:
        z = 1j * k.imag * cubes
        dz = 3.0j * k.imag * pts**2
        n_eff = n
    dx = 3.0 * k_abs * pts**2

    c1, c2 = coeffs
    u = np.zeros_like(z)
    du = np.zeros_like(z)

    if c1 != 0.0:
        f, df = _kummer_branch(n_eff, alpha, z)
        u = u + c1 * f
        du = du + c1 * df * dz

    if c2 != 0.0:
        f, df = _kummer_branch(n_eff - alpha + 1.0, 2.0 - alpha, z)
        power = x ** (1.0 - alpha)
        u = u + c2 * power * f
        du = du + c2 * (power * (1.0 - alpha) / x * dx * f + power * df * dz)

    return finish(np.real(u), np.real(du), scalar)


def stiff_order(params: ModelParams) -> float:
    """mu = (1/3) sqrt(((1 + q)/2)^2 - 384 matter); raises for imaginary mu."""
    half = (1.0 + params.q) / 2.0
    mu_sq = (half**2 - 384.0 * params.matter) / 9.0
    if mu_sq < -ORDER_TOL:
        raise ImaginaryOrderError(
            f"Bessel order is imaginary (mu^2 = {mu_sq:g}); integrate numerically instead"
        )
    return math.sqrt(max(mu_sq, 0.0))


def stiff_flat(
    params: ModelParams,
    coeffs: tuple[float, float],
    a: float | FloatArray,
) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
    """u = A^((1+q)/2) Z_mu(beta A^3), beta = (4/3) sqrt(3 |Lambda|).

    Lambda < 0 gives ordinary Bessel functions J, Y; Lambda > 0 the
    modified functions I, K.
    """
    require(params, CaseId.STIFF_FLAT)
    pts, scalar = as_points(a)
    mu = stiff_order(params)
    half = (1.0 + params.q) / 2.0
    beta = 4.0 / 3.0 * math.sqrt(3.0 * abs(params.cc))

    if params.cc < 0:
        first, second = BesselKind(Kind.J, mu), BesselKind(Kind.Y, mu)
    else:
        first, second = BesselKind(Kind.I, mu), BesselKind(Kind.K, mu)

    bracket, slope = bessel_pair(coeffs, first, second, beta * pts**3)
    prefactor = pts**half
    u = prefactor * bracket
    du = half * prefactor / pts * bracket + 3.0 * beta * prefactor * pts**2 * slope
    return finish(u, du, scalar)
