"""Verification suite: every structural identity checked on one seed."""

import asyncio
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from rich.console import Console
from rich.table import Table

from src.config.models import ModelParams, SolverSettings
from src.errors import DomainError, NodeInDomainError, WDWError
from src.family import (
    bernoulli_residual,
    bernoulli_solution,
    build_member,
    cumulative_integral,
    family_potential_gap,
    shifted_superpotential,
    verify_family_member,
)
from src.model.hamiltonian import h0_residual, ordering_identity_check
from src.model.sampled import FloatArray, SampledFunction
from src.odesolve import frobenius_exponents, solve_basis
from src.susy import (
    SuperpotentialField,
    annihilation_residual,
    factorization_defect,
    node_free_intervals,
    partner_zero_mode,
    riccati_closure,
    superpotential_from_seed,
)


@dataclass
class CheckResult:
    """Outcome of one check."""

    name: str
    residual: float
    threshold: float
    error: str | None = None

    @property
    def passed(self) -> bool:
        if self.error is not None or not math.isfinite(self.residual):
            return False
        return self.residual < self.threshold

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "residual": self.residual if math.isfinite(self.residual) else None,
            "threshold": self.threshold,
            "pass": self.passed,
        }
        if self.error:
            data["error"] = self.error
        return data


@dataclass(frozen=True)
class Check:
    """A named residual computation and the threshold it must stay under."""

    name: str
    threshold: float
    run: Callable[[], float]


def _trial_function(points: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Smooth non-solution used to exercise the factorization identity."""
    return np.sin(2.0 * points) + points**2, 2.0 * np.cos(2.0 * points) + 2.0 * points


class VerificationSuite:
    """Runs residual checks concurrently and summarizes them."""

    def __init__(
        self,
        params: ModelParams,
        seed: SampledFunction,
        lambdas: list[float],
        settings: SolverSettings | None = None,
        allow_negative: bool = False,
        console: Console | None = None,
    ) -> None:
        self.params = params
        self.seed = seed
        self.lambdas = list(lambdas)
        self.settings = settings or SolverSettings()
        self.allow_negative = allow_negative
        self.console = console or Console()
        self.checks: list[Check] = []

        # Everything below is computed once, before the checks fan out
        self._i_gamma: SampledFunction | None = None
        self._window: tuple[int, int] | None = None
        self._w: SuperpotentialField | None = None

    def register_check(self, check: Check) -> None:
        self.checks.append(check)

    def register_checks(self, checks: list[Check]) -> None:
        self.checks.extend(checks)

    def _node_free(self) -> tuple[SampledFunction, SampledFunction, SuperpotentialField]:
        """Seed, I and W restricted to the longest node-free window."""
        if self._window is None:
            intervals = node_free_intervals(self.seed, self.settings)
            if not intervals:
                raise NodeInDomainError([(0, len(self.seed.grid) - 1)])
            self._window = max(intervals, key=lambda span: span[1] - span[0])
        lo, hi = self._window
        u = self.seed.restrict(lo, hi)
        if self._w is None:
            self._w = superpotential_from_seed(
                self.params, u, seed_ref="seed", node_tol=self.settings.node_tol
            )
        return u, self._family_integral().restrict(lo, hi), self._w

    def _family_integral(self) -> SampledFunction:
        if self._i_gamma is None:
            self._i_gamma = cumulative_integral(self.params, self.seed, self.settings)
        return self._i_gamma

    def prepare(self) -> None:
        """Compute the shared I and W up front; failures surface in the checks."""
        try:
            self._family_integral()
        except WDWError:
            pass
        try:
            self._node_free()
        except WDWError:
            pass

    def default_checks(self) -> list[Check]:
        """The full invariant suite for this seed."""
        p = self.params
        s = self.settings
        checks = [
            Check("ordering identity", s.residual_threshold,
                  lambda: ordering_identity_check(p, self.seed)),
            Check("seed H0 residual", s.residual_threshold,
                  lambda: h0_residual(p, self.seed)),
            Check("factorization defect", s.residual_threshold, self._factorization),
            Check("seed annihilation", s.residual_threshold,
                  lambda: annihilation_residual(p, self._node_free()[2], self._node_free()[0])),
            Check("partner zero mode", s.residual_threshold, self._partner_zero_mode),
            Check("riccati closure", s.member_threshold,
                  lambda: riccati_closure(p, self._node_free()[2])),
        ]

        try:
            frobenius_exponents(p)
            checks.append(Check("basis wronskian", s.residual_threshold, self._wronskian))
        except DomainError:
            pass

        for lam in self.lambdas:
            checks.extend(self._lambda_checks(lam))
        return checks

    def _lambda_checks(self, lam: float) -> list[Check]:
        s = self.settings
        return [
            Check(f"two-route V^+ (lambda={lam:g})", s.family_tolerance,
                  lambda: self._two_route(lam)),
            Check(f"bernoulli residual (lambda={lam:g})", s.residual_threshold,
                  lambda: self._bernoulli(lam)),
            Check(f"member residual (lambda={lam:g})", s.member_threshold,
                  lambda: self._member(lam)),
        ]

    def _factorization(self) -> float:
        u, _, w = self._node_free()
        trial = SampledFunction.from_evaluator(u.grid, _trial_function)
        return factorization_defect(self.params, w, trial)

    def _partner_zero_mode(self) -> float:
        u, _, w = self._node_free()
        return annihilation_residual(self.params, w, partner_zero_mode(u), sign=-1)

    def _wronskian(self) -> float:
        basis = solve_basis(self.params, self.seed.grid, self.settings)
        wr = basis.wronskian(self.params.q)
        return float((np.max(wr) - np.min(wr)) / np.max(np.abs(wr)))

    def _two_route(self, lam: float) -> float:
        u, i_gamma, w = self._node_free()
        w_hat = shifted_superpotential(w, u, i_gamma, lam)
        return family_potential_gap(self.params, w_hat, u, i_gamma, lam)

    def _bernoulli(self, lam: float) -> float:
        u, i_gamma, w = self._node_free()
        y = bernoulli_solution(self.params, u, i_gamma, lam)
        return bernoulli_residual(self.params, w, y)

    def _member(self, lam: float) -> float:
        member = build_member(
            self.params,
            self.seed,
            self._family_integral(),
            lam,
            self.settings,
            allow_negative=self.allow_negative,
        )
        return verify_family_member(self.params, member)

    async def run_check(self, check: Check) -> CheckResult:
        """Run a single check in a worker thread and capture the result."""
        try:
            residual = await asyncio.to_thread(check.run)
            return CheckResult(check.name, float(residual), check.threshold)
        except WDWError as e:
            return CheckResult(check.name, math.nan, check.threshold, error=str(e))

    async def run_all(self) -> list[CheckResult]:
        """Run all registered checks concurrently."""
        if not self.checks:
            self.register_checks(self.default_checks())
        await asyncio.to_thread(self.prepare)
        tasks = [self.run_check(check) for check in self.checks]
        return list(await asyncio.gather(*tasks))

    def render_summary_table(self, results: list[CheckResult]) -> None:
        table = Table(title="Verification")
        table.add_column("Check", style="cyan")
        table.add_column("Residual", justify="right")
        table.add_column("Threshold", justify="right")
        table.add_column("Status", justify="center")

        for result in results:
            residual = f"{result.residual:.3e}" if math.isfinite(result.residual) else "-"
            status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(result.name, residual, f"{result.threshold:.0e}", status)

        self.console.print(table)
        for result in results:
            if result.error:
                self.console.print(f"[red]{result.name}:[/red] {result.error}")
