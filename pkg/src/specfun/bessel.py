"""Bessel functions J, Y, I, K of real order on the positive axis."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from src.errors import DomainError, NumericRangeError
from src.model.sampled import FloatArray


class Kind(str, Enum):
    """Bessel function family."""

    J = "J"
    Y = "Y"
    I = "I"  # noqa: E741
    K = "K"


@dataclass(frozen=True)
class BesselKind:
    """A Bessel family together with its (real) order."""

    kind: Kind
    order: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.order):
            raise DomainError(f"Bessel order must be finite, got {self.order}")
        object.__setattr__(self, "kind", Kind(self.kind))

    def __str__(self) -> str:
        return f"{self.kind.value}_{self.order:g}"


_VALUE = {
    Kind.J: special.jv,
    Kind.Y: special.yv,
    Kind.I: special.iv,
    Kind.K: special.kv,
}

_DERIVATIVE = {
    Kind.J: special.jvp,
    Kind.Y: special.yvp,
    Kind.I: special.ivp,
    Kind.K: special.kvp,
}


def _checked_argument(z: float | FloatArray) -> FloatArray:
    z_arr = np.asarray(z, dtype=float)
    if np.any(~(z_arr > 0)):
        raise DomainError("Bessel argument must be positive")
    return z_arr


def _finish(result: FloatArray, kind: BesselKind, z: FloatArray) -> float | FloatArray:
    if not np.all(np.isfinite(result)):
        raise NumericRangeError(f"{kind} is not finite for z up to {np.max(z):g}")
    if np.ndim(result) == 0:
        return float(result)
    return np.asarray(result, dtype=float)


def bessel(kind: BesselKind, z: float | FloatArray) -> float | FloatArray:
    """Value of the Bessel function ``kind`` at z > 0."""
    z_arr = _checked_argument(z)
    result = _VALUE[kind.kind](kind.order, z_arr)
    return _finish(result, kind, z_arr)


def bessel_derivative(kind: BesselKind, z: float | FloatArray) -> float | FloatArray:
    """d/dz of the Bessel function ``kind`` (recurrence-based)."""
    z_arr = _checked_argument(z)
    result = _DERIVATIVE[kind.kind](kind.order, z_arr)
    return _finish(result, kind, z_arr)
