"""Run configuration assembly and seed resolution shared by the CLI commands."""

from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.closed_forms import ClosedFormCase
from src.config import ConfigLoader, ModelParams, RunConfig
from src.errors import ConfigurationError
from src.model.sampled import Grid, SampledFunction
from src.odesolve import integrate

# Closed inflationary universe, m^2 = 4, a0 = b0 = 1, five family members
FIG1_PRESET: dict[str, Any] = {
    "model": {"gamma": -1.0, "kappa": 1, "cc": 0.0, "matter": 1.5, "q": 1.0},
    "closed_form": True,
    "coeffs": (1.0, 1.0),
    "lambdas": [1.0, 11.0, 61.0, 161.0, 411.0],
    "a_min": 0.6,
    "a_max": 3.0,
    "n_points": 20000,
}


def _merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    """Recursive dict merge; ``update`` wins."""
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def resolve_config(
    overrides: dict[str, Any],
    config_path: Path | None = None,
    fig1: bool = False,
    msq: float | None = None,
) -> RunConfig:
    """Layer run file (or WDW_* environment), the --fig1 preset and CLI flags.

    ``msq`` fixes matter so that m^2 = -Lambda/3 + (8/3) matter equals it at
    the configured Lambda.
    """
    data = ConfigLoader(config_path).load()
    if fig1:
        data = _merge(data, FIG1_PRESET)
    data = _merge(data, overrides)

    try:
        if msq is not None:
            model = data.get("model", {})
            params = ModelParams.from_msq(
                gamma=model.get("gamma"),
                kappa=model.get("kappa", 0),
                msq=msq,
                cc=model.get("cc", 0.0),
                q=model.get("q", 0.0),
            )
            data["model"] = params.model_dump()
        if "model" not in data or "gamma" not in data["model"]:
            raise ConfigurationError("gamma is required (--gamma, run file or WDW_GAMMA)")
        return RunConfig.model_validate(data)
    except ValidationError as err:
        raise ConfigurationError(f"Invalid run configuration: {err}") from err
    except (TypeError, ValueError) as err:
        raise ConfigurationError(str(err)) from err


def make_grid(config: RunConfig) -> Grid:
    return Grid.linspace(config.a_min, config.a_max, config.n_points)


def resolve_seed(config: RunConfig, grid: Grid | None = None) -> tuple[SampledFunction, str]:
    """Seed solution on the run grid plus a label naming its origin."""
    grid = grid or make_grid(config)
    if config.closed_form:
        case = ClosedFormCase.for_params(config.model, config.coeffs)
        return case.sample(grid), case.case_id.value
    seed = integrate(config.model, grid, config.init_value, config.init_deriv, config.settings)
    return seed, "numeric"
