"""Configuration models for WDW Isospectral."""

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ModelParams(BaseModel):
    """Physical and factor-ordering parameters of one Wheeler-DeWitt problem.

    ``matter`` stores the product pi*G*M_gamma; G and M_gamma never appear
    separately.
    """

    model_config = ConfigDict(frozen=True)

    gamma: float
    kappa: int = 0
    cc: float = 0.0
    matter: float = Field(default=0.0, ge=0.0)
    q: float = 0.0

    @field_validator("kappa")
    @classmethod
    def _check_kappa(cls, value: int) -> int:
        if value not in (-1, 0, 1):
            raise ValueError(f"kappa must be -1, 0 or +1, got {value}")
        return value

    @property
    def m_squared(self) -> float:
        """m^2 = -Lambda/3 + (8/3) pi G M (inflationary parametrization)."""
        return -self.cc / 3.0 + 8.0 * self.matter / 3.0

    @classmethod
    def from_msq(
        cls,
        gamma: float,
        kappa: int,
        msq: float,
        cc: float = 0.0,
        q: float = 0.0,
    ) -> "ModelParams":
        """Build parameters whose m^2 equals ``msq`` at the given Lambda."""
        matter = 3.0 * (msq + cc / 3.0) / 8.0
        if matter < 0:
            raise ValueError(
                f"m^2 = {msq:g} needs matter = {matter:g} < 0 at Lambda = {cc:g}"
            )
        return cls(gamma=gamma, kappa=kappa, cc=cc, matter=matter, q=q)


class SolverSettings(BaseModel):
    """Numerical tolerances shared by the solver, family and verification layers."""

    model_config = ConfigDict(frozen=True)

    rtol: float = Field(default=1e-9, gt=0)
    atol: float = Field(default=1e-12, gt=0)
    residual_threshold: float = Field(default=1e-6, gt=0)
    family_tolerance: float = Field(default=1e-6, gt=0)
    member_threshold: float = Field(default=1e-5, gt=0)
    overflow_cap: float = Field(default=1e300, gt=0)
    node_tol: float = Field(default=1e-10, ge=0)
    node_margin: float = Field(default=0.1, ge=0, lt=0.5)
    head_floor: float = Field(default=1e-3, gt=0)
    turning_delta: float = Field(default=1e-6, ge=0)


class OutputFormat(str, Enum):
    """Export formats."""

    CSV = "csv"
    JSON = "json"


class RunConfig(BaseModel):
    """Everything a CLI command needs to run."""

    model: ModelParams
    settings: SolverSettings = Field(default_factory=SolverSettings)
    a_min: float = Field(default=0.6, gt=0)
    a_max: float = 3.0
    n_points: int = Field(default=2000, ge=16)
    lambdas: list[float] = Field(default_factory=list)
    allow_negative_lambda: bool = False
    closed_form: bool = False
    coeffs: tuple[float, float] = (1.0, 0.0)
    init_value: float = 1.0
    init_deriv: float = 0.0
    output_path: Path = Path("wdw_output.csv")
    format: OutputFormat = OutputFormat.CSV

    @model_validator(mode="after")
    def _check_bounds(self) -> "RunConfig":
        if self.a_max <= self.a_min:
            raise ValueError(f"a_max ({self.a_max}) must exceed a_min ({self.a_min})")
        return self

    def provenance(self) -> dict[str, str]:
        """Flat key=value view written into export headers."""
        flat: dict[str, str] = {}
        for key, value in self.model.model_dump().items():
            flat[f"model.{key}"] = repr(value)
        for key in (
            "a_min", "a_max", "n_points", "lambdas", "allow_negative_lambda",
            "closed_form", "coeffs", "init_value", "init_deriv",
        ):
            flat[key] = repr(getattr(self, key))
        flat["rtol"] = repr(self.settings.rtol)
        flat["atol"] = repr(self.settings.atol)
        return flat
