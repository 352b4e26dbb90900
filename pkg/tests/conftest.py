"""Shared fixtures for WDW Isospectral tests."""

import numpy as np
import pytest

from src.closed_forms import CaseId, ClosedFormCase
from src.config.models import ModelParams, SolverSettings
from src.family import cumulative_integral
from src.model.sampled import Grid, SampledFunction

# Closed inflationary universe with m^2 = 4, q = 1 and a0 = b0 = 1
FIG1_PARAMS = ModelParams(gamma=-1.0, kappa=1, cc=0.0, matter=1.5, q=1.0)
FIG1_LAMBDAS = [1.0, 11.0, 61.0, 161.0, 411.0]

# The first node of the preset seed sits near A = 0.834
FIG1_WINDOW = (0.6, 0.8)

TIGHT = SolverSettings(rtol=1e-11, atol=1e-14)


@pytest.fixture
def fig1_params():
    return FIG1_PARAMS


@pytest.fixture(scope="session")
def fig1_case():
    return ClosedFormCase(CaseId.INFLATION_M_POS, FIG1_PARAMS, (1.0, 1.0))


@pytest.fixture(scope="session")
def fig1_grid():
    return Grid.linspace(0.6, 3.0, 20000)


@pytest.fixture(scope="session")
def fig1_seed(fig1_case, fig1_grid):
    return fig1_case.sample(fig1_grid)


@pytest.fixture(scope="session")
def fig1_i_gamma(fig1_seed):
    return cumulative_integral(FIG1_PARAMS, fig1_seed)


@pytest.fixture(scope="session")
def window_seed(fig1_case):
    """Preset seed on a node-free window."""
    return fig1_case.sample(Grid.linspace(*FIG1_WINDOW, 4000))


@pytest.fixture(scope="session")
def window_i_gamma(window_seed):
    return cumulative_integral(FIG1_PARAMS, window_seed)


@pytest.fixture
def tight_settings():
    return TIGHT


# ===== Factories =====

def make_params(gamma=-1.0, kappa=0, cc=0.0, matter=0.0, q=0.0):
    """ModelParams with V = 0 unless told otherwise."""
    return ModelParams(gamma=gamma, kappa=kappa, cc=cc, matter=matter, q=q)


def make_sampled(grid, fn, dfn):
    """SampledFunction from an analytic function and its derivative."""
    return SampledFunction.from_evaluator(grid, lambda a: (fn(a), dfn(a)))


def make_constant(grid, value=1.0):
    return make_sampled(grid, lambda a: np.full_like(a, value), np.zeros_like)


def make_power(grid, c):
    """A^c with derivative c A^(c-1)."""
    return make_sampled(grid, lambda a: a**c, lambda a: c * a ** (c - 1.0))


def make_smooth(grid, rng, terms=3):
    """Random sum of sines with moderate frequencies plus a quadratic."""
    amps = rng.uniform(-1.0, 1.0, terms)
    freqs = rng.uniform(0.5, 5.0, terms)
    phases = rng.uniform(0.0, 2.0 * np.pi, terms)
    quad = rng.uniform(-1.0, 1.0)

    def fn(a):
        return sum(m * np.sin(k * a + p) for m, k, p in zip(amps, freqs, phases)) + quad * a**2

    def dfn(a):
        return sum(m * k * np.cos(k * a + p) for m, k, p in zip(amps, freqs, phases)) + 2 * quad * a

    return make_sampled(grid, fn, dfn)
