"""Dispatch from a closed-form case to its evaluator."""

from collections.abc import Callable
from dataclasses import dataclass

from src.config.models import ModelParams
from src.errors import ConfigurationError
from src.model.sampled import FloatArray, Grid, SampledFunction

from .base import CASE_REQUIREMENTS, CaseId, classify
from .fluids import dust_flat, stiff_flat
from .inflation import inflation_mneg, inflation_mpos, inflation_mzero

Evaluator = Callable[
    [ModelParams, tuple[float, float], FloatArray],
    tuple[float, float] | tuple[FloatArray, FloatArray],
]

EVALUATORS: dict[CaseId, Evaluator] = {
    CaseId.INFLATION_M_POS: inflation_mpos,
    CaseId.INFLATION_M_NEG: inflation_mneg,
    CaseId.INFLATION_M_ZERO_CLOSED: inflation_mzero,
    CaseId.INFLATION_M_ZERO_OPEN: inflation_mzero,
    CaseId.INFLATION_M_ZERO_FLAT: inflation_mzero,
    CaseId.DUST_FLAT: dust_flat,
    CaseId.STIFF_FLAT: stiff_flat,
}


@dataclass(frozen=True)
class ClosedFormCase:
    """A closed-form solution: case, parameters and basis coefficients."""

    case_id: CaseId
    params: ModelParams
    coeffs: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self) -> None:
        requirement = CASE_REQUIREMENTS[self.case_id]
        if not requirement.holds(self.params):
            raise ConfigurationError(
                f"{self.case_id.value} requires {requirement.description}"
            )

    @classmethod
    def for_params(
        cls, params: ModelParams, coeffs: tuple[float, float] = (1.0, 0.0)
    ) -> "ClosedFormCase":
        """Classify ``params`` and build the matching case."""
        case_id = classify(params)
        if case_id is None:
            raise ConfigurationError(
                f"No closed form for gamma={params.gamma:g}, kappa={params.kappa}, "
                f"Lambda={params.cc:g}, q={params.q:g}"
            )
        return cls(case_id, params, coeffs)

    def evaluate(
        self, a: float | FloatArray
    ) -> tuple[float, float] | tuple[FloatArray, FloatArray]:
        """(u, du/dA) at ``a``."""
        return EVALUATORS[self.case_id](self.params, self.coeffs, a)

    def sample(self, grid: Grid) -> SampledFunction:
        return SampledFunction.from_evaluator(grid, self.evaluate)  # type: ignore[arg-type]
