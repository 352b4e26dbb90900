"""Configuration module for WDW Isospectral."""

from .loader import ConfigLoader
from .models import ModelParams, OutputFormat, RunConfig, SolverSettings

__all__ = ["ModelParams", "SolverSettings", "RunConfig", "OutputFormat", "ConfigLoader"]
