"""Analytic solutions of the Wheeler-DeWitt equation for special parameter sets."""

from .base import CASE_REQUIREMENTS, CaseId, CaseRequirement, classify, m_squared
from .cases import EVALUATORS, ClosedFormCase
from .fluids import dust_flat, dust_parameters, stiff_flat, stiff_order
from .inflation import inflation_mneg, inflation_mpos, inflation_mzero

__all__ = [
    "CASE_REQUIREMENTS",
    "CaseId",
    "CaseRequirement",
    "ClosedFormCase",
    "EVALUATORS",
    "classify",
    "dust_flat",
    "dust_parameters",
    "inflation_mneg",
    "inflation_mpos",
    "inflation_mzero",
    "m_squared",
    "stiff_flat",
    "stiff_order",
]
