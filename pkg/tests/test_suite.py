"""Tests for the verification suite."""

import math

import pytest
from rich.console import Console

from src.cli.suite import Check, CheckResult, VerificationSuite
from src.errors import NodeInDomainError
from src.family import shifted_superpotential
from src.model import Grid
from src.odesolve import integrate
from src.susy import SuperpotentialField
from tests.conftest import TIGHT, make_params

LAMBDAS = [1.0, 11.0]


@pytest.fixture
def ordering_zero():
    """Closed universe with q = 0, V = 144 A^3 and a node-free seed."""
    params = make_params(kappa=1, q=0.0)
    seed = integrate(params, Grid.linspace(0.2, 1.0, 4000), 1.0, 0.0, TIGHT)
    return params, seed


@pytest.fixture
def recording_console():
    return Console(record=True, width=140)


def _broken_shift(w, u, i_gamma, lam):
    good = shifted_superpotential(w, u, i_gamma, lam)
    return SuperpotentialField(
        good.grid, 1.01 * good.values, 1.01 * good.derivs, seed_ref=good.seed_ref
    )


class TestCheckResult:
    def test_pass(self):
        result = CheckResult("x", 1e-9, 1e-6)
        assert result.passed is True
        assert result.to_dict() == {"name": "x", "residual": 1e-9, "threshold": 1e-6, "pass": True}

    def test_threshold_is_strict(self):
        assert CheckResult("x", 1e-6, 1e-6).passed is False

    def test_error_fails(self):
        result = CheckResult("x", math.nan, 1e-6, error="boom")
        assert result.passed is False
        data = result.to_dict()
        assert data["residual"] is None
        assert data["error"] == "boom"


class TestVerificationSuite:
    async def test_all_checks_pass(self, ordering_zero, recording_console):
        params, seed = ordering_zero
        suite = VerificationSuite(params, seed, LAMBDAS, TIGHT, console=recording_console)
        results = await suite.run_all()

        names = [r.name for r in results]
        assert "basis wronskian" in names
        assert "two-route V^+ (lambda=11)" in names
        assert len(results) == 7 + 3 * len(LAMBDAS)
        failed = [(r.name, r.residual, r.error) for r in results if not r.passed]
        assert failed == []

    async def test_negative_control(self, ordering_zero, monkeypatch, recording_console):
        monkeypatch.setattr("src.cli.suite.shifted_superpotential", _broken_shift)
        params, seed = ordering_zero
        suite = VerificationSuite(params, seed, LAMBDAS, TIGHT, console=recording_console)
        results = await suite.run_all()

        failed = {r.name for r in results if not r.passed}
        assert failed == {"two-route V^+ (lambda=1)", "two-route V^+ (lambda=11)"}

    async def test_check_errors_are_captured(self, ordering_zero, recording_console):
        params, seed = ordering_zero

        def raises():
            raise NodeInDomainError([(3, 4)])

        suite = VerificationSuite(params, seed, [], TIGHT, console=recording_console)
        suite.register_check(Check("explodes", 1e-6, raises))
        results = await suite.run_all()

        assert len(results) == 1
        assert results[0].passed is False
        assert "node" in results[0].error

    async def test_seed_with_nodes_fails_window_checks(self, fig1_params, recording_console):
        # Every sign run is too short for a window, so only the W-free checks can pass
        grid = Grid.linspace(2.5, 3.0, 200)
        seed = integrate(fig1_params, grid, 1.0, 0.0, TIGHT)
        suite = VerificationSuite(fig1_params, seed, [1.0], TIGHT, console=recording_console)
        results = {r.name: r for r in await suite.run_all()}

        assert results["riccati closure"].error is not None
        assert results["seed H0 residual"].error is None
        assert results["member residual (lambda=1)"].error is None

    def test_no_checks_until_run(self, ordering_zero, recording_console):
        params, seed = ordering_zero
        suite = VerificationSuite(params, seed, LAMBDAS, console=recording_console)
        assert suite.checks == []
        assert len(suite.default_checks()) == 7 + 3 * len(LAMBDAS)

    def test_render_summary_table(self, ordering_zero, recording_console):
        params, seed = ordering_zero
        suite = VerificationSuite(params, seed, [], console=recording_console)
        suite.render_summary_table([
            CheckResult("riccati closure", 2.5e-9, 1e-5),
            CheckResult("broken", math.nan, 1e-6, error="no window"),
        ])
        text = recording_console.export_text()
        assert "riccati closure" in text
        assert "PASS" in text
        assert "FAIL" in text
        assert "no window" in text
