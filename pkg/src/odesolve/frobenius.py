"""Indicial analysis of A u'' - q u' - V u = 0 at the regular singular point A = 0."""

import cmath
import math

from src.config.models import ModelParams
from src.errors import DegenerateIndicialError, TooSingularError

DEGENERACY_TOL = 1e-9


def _singular_exponent(params: ModelParams) -> float | None:
    """Exponent 2 - 3 gamma of the matter term, or None when it is absent."""
    if params.matter == 0:
        return None
    return 2.0 - 3.0 * params.gamma


def frobenius_exponents(params: ModelParams) -> tuple[complex, complex] | tuple[float, float]:
    """Indicial roots of A u'' - q u' - V u = 0 at A = 0, ascending by real part.

    Without a 1/A term in V the roots are (0, 1 + q). The stiff fluid
    (gamma = 1) contributes 384 matter to the indicial polynomial
    r^2 - (1 + q) r + 384 matter = 0; its roots may be a complex pair.
    """
    exponent = _singular_exponent(params)
    one_q = 1.0 + params.q

    if exponent is not None and exponent < -1.0:
        raise TooSingularError(
            f"A*V(A) ~ A^{exponent + 1:g} diverges at the origin (gamma = {params.gamma:g})"
        )

    if _is_stiff(exponent):
        disc = one_q**2 - 4.0 * 384.0 * params.matter
        if disc >= 0:
            root = math.sqrt(disc)
            return (0.5 * (one_q - root), 0.5 * (one_q + root))
        root_c = cmath.sqrt(disc)
        return (0.5 * (one_q - root_c), 0.5 * (one_q + root_c))

    if one_q >= 0:
        return (0.0, one_q)
    return (one_q, 0.0)


def _is_stiff(exponent: float | None) -> bool:
    return exponent is not None and math.isclose(exponent, -1.0, abs_tol=1e-12)


def _indicial(params: ModelParams, s: complex) -> complex:
    """Indicial polynomial s^2 - (1 + q) s (+ 384 matter for the stiff fluid)."""
    shift = 384.0 * params.matter if _is_stiff(_singular_exponent(params)) else 0.0
    return s * s - (1.0 + params.q) * s + shift


def _first_correction(params: ModelParams, r: complex) -> tuple[float, complex] | None:
    """(m, c) such that u ~ A^r (1 + c A^m), taken from the lowest power of V.

    None when V has no power beyond the indicial one, or when r + m is
    itself a root (the next order then carries a logarithm).
    """
    terms: list[tuple[float, float]] = []
    if params.kappa:
        terms.append((3.0, 144.0 * params.kappa))
    if params.cc:
        terms.append((5.0, 48.0 * params.cc))
    exponent = _singular_exponent(params)
    if exponent is not None and not _is_stiff(exponent):
        terms.append((exponent, -384.0 * params.matter))
    if not terms:
        return None

    lowest = min(e for e, _ in terms)
    coeff = sum(v for e, v in terms if math.isclose(e, lowest, abs_tol=1e-12))
    m = lowest + 1.0
    denom = _indicial(params, r + m)
    if abs(denom) < DEGENERACY_TOL:
        return None
    # A^(r+m-1) balance: c P(r + m) = coefficient of A^lowest in V
    return m, coeff / denom


def frobenius_seed(params: ModelParams, a: float, which: int) -> tuple[float, float]:
    """Two-term Frobenius data (u, u') at ``a`` for root ``which`` (0 or 1).

    u = A^r (1 + c A^m) with m - 1 the lowest remaining power of V. For a
    complex pair r = s +/- i t the two real seeds are the real and imaginary
    parts of the series for s + i t, led by A^s cos(t ln A) and A^s sin(t ln A).
    """
    first, second = frobenius_exponents(params)
    if abs(complex(second) - complex(first)) < DEGENERACY_TOL:
        raise DegenerateIndicialError(
            f"Indicial roots coincide at r = {complex(first).real:g}; "
            "logarithmic solutions are not implemented"
        )

    oscillating = isinstance(first, complex) and first.imag != 0
    if oscillating:
        r = complex(first.real, abs(first.imag))
    else:
        r = complex(complex((first, second)[which]).real)

    lead = cmath.exp(r * math.log(a))
    value = lead
    deriv = r * lead / a
    correction = _first_correction(params, r)
    if correction is not None:
        m, c = correction
        tail = c * lead * a**m
        value += tail
        deriv += (r + m) * tail / a

    if oscillating and which == 1:
        return value.imag, deriv.imag
    return value.real, deriv.real
