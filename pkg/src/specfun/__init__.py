"""Special functions for the closed-form solutions."""

from .bessel import BesselKind, Kind, bessel, bessel_derivative
from .hypergeometric import hyp1f1, hyp1f1_derivative

__all__ = ["BesselKind", "Kind", "bessel", "bessel_derivative", "hyp1f1", "hyp1f1_derivative"]
