"""Kummer's confluent hypergeometric function 1F1(n, alpha; z)."""

import mpmath
import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from src.errors import NumericRangeError, PoleError


def _is_pole(alpha: complex | float) -> bool:
    value = complex(alpha)
    return value.imag == 0 and value.real <= 0 and float(value.real).is_integer()


def _mp_hyp1f1(n: complex, alpha: complex, z: complex) -> complex:
    return complex(mpmath.hyp1f1(n, alpha, z))


_mp_vectorized = np.frompyfunc(_mp_hyp1f1, 3, 1)


def hyp1f1(
    n: complex | float, alpha: complex | float, z: ArrayLike
) -> float | complex | NDArray[np.float64] | NDArray[np.complex128]:
    """1F1(n, alpha; z).

    Real arguments go through ``scipy.special.hyp1f1``; a complex ``n``,
    ``alpha`` or ``z`` is evaluated with mpmath.
    """
    if _is_pole(alpha):
        raise PoleError(f"1F1 has a pole at alpha = {complex(alpha).real:g}")

    z_arr = np.asarray(z)
    is_complex = (
        np.iscomplexobj(z_arr) or isinstance(n, complex) or isinstance(alpha, complex)
    )

    if is_complex:
        result = np.asarray(
            _mp_vectorized(complex(n), complex(alpha), z_arr.astype(complex)), dtype=complex
        )
    else:
        result = np.asarray(special.hyp1f1(float(n), float(alpha), z_arr.astype(float)))

    if not np.all(np.isfinite(result)):
        raise NumericRangeError(f"1F1({n}, {alpha}; z) is not finite on the requested range")

    if result.ndim == 0:
        return complex(result) if is_complex else float(result)
    return result


def hyp1f1_derivative(
    n: complex | float, alpha: complex | float, z: ArrayLike
) -> float | complex | NDArray[np.float64] | NDArray[np.complex128]:
    """d/dz 1F1(n, alpha; z) = (n / alpha) 1F1(n + 1, alpha + 1; z)."""
    if _is_pole(alpha):
        raise PoleError(f"1F1 has a pole at alpha = {complex(alpha).real:g}")
    return (n / alpha) * hyp1f1(n + 1, alpha + 1, z)
