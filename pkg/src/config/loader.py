"""Configuration loader for WDW Isospectral."""

import os
import re
from pathlib import Path
from typing import Any

from dotenv import load_dotenv

from src.errors import ConfigurationError

ENV_PREFIX = "WDW_"

# Environment fallbacks for model parameters
_MODEL_ENV_KEYS = {
    "gamma": float,
    "kappa": int,
    "cc": float,
    "matter": float,
    "q": float,
}


class ConfigLoader:
    """Load run settings from a YAML file or ``WDW_*`` environment variables.

    The loader returns plain dictionaries; the CLI merges them with its flags
    and validates the result as a :class:`~src.config.models.RunConfig`.
    """

    def __init__(self, config_path: Path | None = None) -> None:
        """Initialize config loader.

        Args:
            config_path: Path to a YAML run file. If None, searches for
                        config/wdw.yaml and wdw.yaml in the working directory.
        """
        self.config_path = config_path

    def load(self) -> dict[str, Any]:
        """Load settings from YAML, falling back to the environment."""
        yaml_path = self._find_yaml_config()

        if yaml_path is not None:
            if not yaml_path.exists():
                raise ConfigurationError(f"Config file not found: {yaml_path}")
            return self._load_from_yaml(yaml_path)

        return self._load_from_env()

    def _find_yaml_config(self) -> Path | None:
        """Find YAML configuration file."""
        if self.config_path:
            return self.config_path

        for path in (Path("config/wdw.yaml"), Path("wdw.yaml")):
            if path.exists():
                return path

        return None

    def _load_from_yaml(self, path: Path) -> dict[str, Any]:
        """Load configuration from YAML file."""
        try:
            import yaml
        except ImportError as err:
            raise ImportError(
                "PyYAML is required for YAML config. Install with: pip install pyyaml"
            ) from err

        load_dotenv()

        content = self._substitute_env_vars(path.read_text(encoding="utf-8"))

        try:
            data = yaml.safe_load(content) or {}
        except yaml.YAMLError as err:
            raise ConfigurationError(f"Malformed YAML in {path}: {err}") from err

        if not isinstance(data, dict):
            raise ConfigurationError(f"Top level of {path} must be a mapping")

        return data

    def _substitute_env_vars(self, content: str) -> str:
        """Substitute ${VAR} and ${VAR:-default} patterns with environment values."""
        pattern = r"\$\{([^}:]+)(?::-([^}]*))?\}"

        def replace(match: re.Match[str]) -> str:
            var_name = match.group(1)
            default = match.group(2) or ""
            return os.getenv(var_name, default)

        return re.sub(pattern, replace, content)

    def _load_from_env(self) -> dict[str, Any]:
        """Collect model parameters from WDW_* variables."""
        load_dotenv()

        model: dict[str, Any] = {}
        for key, cast in _MODEL_ENV_KEYS.items():
            raw = os.getenv(f"{ENV_PREFIX}{key.upper()}")
            if raw is None or raw == "":
                continue
            try:
                model[key] = cast(raw)
            except ValueError as err:
                raise ConfigurationError(
                    f"{ENV_PREFIX}{key.upper()}={raw!r} is not a valid {cast.__name__}"
                ) from err

        return {"model": model} if model else {}
