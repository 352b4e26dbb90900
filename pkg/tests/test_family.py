"""Tests for the cumulative integral and the isospectral family."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from src.errors import (
    ConfigurationError,
    IntegrabilityError,
    InternalConsistencyError,
    LambdaDomainError,
    NodeInDomainError,
)
from src.family import (
    FamilyMember,
    bernoulli_residual,
    bernoulli_solution,
    build_member,
    check_lambdas,
    cumulative_integral,
    expanded_family_potential,
    family_potential,
    family_potential_gap,
    family_wavefunction,
    g_lambda,
    shifted_superpotential,
    sweep_family,
    verify_family_member,
)
from src.model import Grid, potential_samples
from src.odesolve import integrate
from src.susy import partner_potential, superpotential_from_seed
from tests.conftest import (
    FIG1_LAMBDAS,
    FIG1_PARAMS,
    TIGHT,
    make_constant,
    make_params,
    make_power,
)


@pytest.fixture
def toy_grid():
    return Grid.linspace(0.5, 2.0, 1000)


@pytest.fixture
def toy_params():
    # V = 0, q = 1: u = 1 solves the equation and I = A^2 / 2
    return make_params(q=1.0)


@pytest.fixture
def toy_seed(toy_grid):
    return make_constant(toy_grid, 1.0)


@pytest.fixture
def toy_i_gamma(toy_params, toy_seed):
    return cumulative_integral(toy_params, toy_seed)


@pytest.fixture
def window_w(window_seed):
    return superpotential_from_seed(FIG1_PARAMS, window_seed)


def _deviation(member_u, u):
    return float(np.max(np.abs(member_u.values - u.values)) / u.sup_norm())


class TestCumulativeIntegral:
    def test_constant_seed(self, toy_grid, toy_i_gamma):
        a = toy_grid.points
        assert np.allclose(toy_i_gamma.values, a**2 / 2, rtol=1e-9)
        assert np.allclose(toy_i_gamma.derivs, a)

    def test_linear_seed(self):
        grid = Grid.linspace(0.5, 2.0, 1000)
        i_gamma = cumulative_integral(make_params(), make_power(grid, 1.0))
        assert np.allclose(i_gamma.values, grid.points**3 / 3, rtol=1e-9)

    def test_head_only(self):
        # The grid starts below the head floor, so no backward bridge is needed
        grid = Grid.linspace(1e-4, 1.0, 2000)
        i_gamma = cumulative_integral(make_params(q=1.0), make_power(grid, 2.0))
        assert np.allclose(i_gamma.values, grid.points**6 / 6, rtol=1e-8, atol=1e-13)

    def test_matches_quadrature(self, fig1_case, fig1_seed, fig1_i_gamma):
        def integrand(x):
            u, _ = fig1_case.evaluate(x)
            return x * u**2

        base = fig1_i_gamma.values[0]
        for index in (500, 2000, 4000, 7000):
            a = fig1_seed.points[index]
            expected, _ = quad(integrand, 0.6, a, limit=400, epsabs=1e-13, epsrel=1e-12)
            assert fig1_i_gamma.values[index] - base == pytest.approx(expected, rel=1e-8)

    def test_independent_of_grid_start(self):
        params = make_params(kappa=1, q=0.0)
        full = integrate(params, Grid.linspace(0.2, 1.0, 4001), 1.0, 0.0, TIGHT)
        part = full.restrict(1000, 4001)
        i_full = cumulative_integral(params, full, TIGHT)
        i_part = cumulative_integral(params, part, TIGHT)
        assert np.allclose(i_part.values, i_full.values[1000:], rtol=1e-8)

    def test_positive_and_non_decreasing(self, fig1_i_gamma):
        assert fig1_i_gamma.values[0] > 0
        assert np.all(np.diff(fig1_i_gamma.values) >= 0)

    def test_divergent_ordering(self, toy_grid, toy_seed):
        with pytest.raises(IntegrabilityError, match="diverges"):
            cumulative_integral(make_params(q=-1.0), toy_seed)


class TestLambdaDomain:
    def test_g(self):
        assert g_lambda(1.0) == pytest.approx(math.sqrt(2.0))
        assert g_lambda(-2.0) == pytest.approx(math.sqrt(2.0))
        assert g_lambda(0.0) == 0.0

    def test_g_imaginary(self):
        with pytest.raises(LambdaDomainError) as info:
            g_lambda(-0.5)
        assert info.value.code == 3

    def test_imaginary_range_rejected(self):
        with pytest.raises(LambdaDomainError, match="imaginary") as info:
            check_lambdas([1.0, -0.5, -0.2])
        assert info.value.offending == [-0.5, -0.2]

    def test_negative_needs_flag(self):
        with pytest.raises(LambdaDomainError, match="allow-negative-lambda"):
            check_lambdas([-5.0])
        check_lambdas([-5.0], allow_negative=True)

    def test_negative_must_clear_integral(self, toy_i_gamma):
        # I reaches 2 at A = 2, so lambda must not exceed -3
        check_lambdas([-3.5], toy_i_gamma, allow_negative=True)
        with pytest.raises(LambdaDomainError, match="I spans") as info:
            check_lambdas([-3.5, -2.0, -1.0], toy_i_gamma, allow_negative=True)
        assert info.value.offending == [-2.0, -1.0]

    def test_non_negative_accepted(self, toy_i_gamma):
        check_lambdas([0.0, 1.0, 1e9], toy_i_gamma)


class TestBernoulli:
    def test_toy(self, toy_params, toy_seed, toy_i_gamma, toy_grid):
        y = bernoulli_solution(toy_params, toy_seed, toy_i_gamma, 1.0)
        assert np.allclose(y.values, toy_grid.points**2 / 2 + 1.0, rtol=1e-9)
        w = superpotential_from_seed(toy_params, toy_seed)
        assert bernoulli_residual(toy_params, w, y) < 1e-10

    @pytest.mark.parametrize("lam", FIG1_LAMBDAS)
    def test_preset(self, window_seed, window_i_gamma, window_w, lam):
        y = bernoulli_solution(FIG1_PARAMS, window_seed, window_i_gamma, lam)
        assert bernoulli_residual(FIG1_PARAMS, window_w, y) < 1e-6

    def test_nodes_rejected(self, fig1_seed, fig1_i_gamma):
        with pytest.raises(NodeInDomainError):
            bernoulli_solution(FIG1_PARAMS, fig1_seed, fig1_i_gamma, 1.0)

    def test_grids_must_match(self, toy_params, toy_seed, window_i_gamma):
        with pytest.raises(ConfigurationError, match="share"):
            bernoulli_solution(toy_params, toy_seed, window_i_gamma, 1.0)


class TestShiftedSuperpotential:
    def test_toy(self, toy_params, toy_seed, toy_i_gamma, toy_grid):
        w = superpotential_from_seed(toy_params, toy_seed, seed_ref="one")
        w_hat = shifted_superpotential(w, toy_seed, toy_i_gamma, 1.0)
        a = toy_grid.points
        assert np.allclose(w_hat.values, 1.0 / (a**2 / 2 + 1.0), rtol=1e-9)
        assert np.allclose(w_hat.derivs, -a / (a**2 / 2 + 1.0) ** 2, rtol=1e-9)
        assert w_hat.seed_ref == "one|lambda=1"

    @pytest.mark.parametrize("lam", [1.0, 411.0])
    def test_partner_potential_unchanged(self, window_seed, window_i_gamma, window_w, lam):
        w_hat = shifted_superpotential(window_w, window_seed, window_i_gamma, lam)
        v_minus = partner_potential(FIG1_PARAMS, window_w).values[2:-2]
        v_minus_hat = partner_potential(FIG1_PARAMS, w_hat).values[2:-2]
        assert np.max(np.abs(v_minus_hat - v_minus)) / np.max(np.abs(v_minus)) < 1e-8


class TestFamilyPotential:
    def test_toy(self, toy_params, toy_seed, toy_i_gamma, toy_grid):
        w = superpotential_from_seed(toy_params, toy_seed)
        w_hat = shifted_superpotential(w, toy_seed, toy_i_gamma, 1.0)
        v_hat = family_potential(toy_params, w, w_hat, toy_seed, toy_i_gamma, 1.0)
        a = toy_grid.points
        assert np.allclose(v_hat.values, 2 * a**3 / (a**2 / 2 + 1.0) ** 2, rtol=1e-9)

    def test_expanded_toy(self, toy_params, toy_seed, toy_i_gamma, toy_grid):
        v_hat = expanded_family_potential(toy_params, toy_seed, toy_i_gamma, 1.0)
        a = toy_grid.points
        assert np.allclose(v_hat.values, 2 * a**3 / (a**2 / 2 + 1.0) ** 2, rtol=1e-9)

    @pytest.mark.parametrize("lam", [1.0, 411.0])
    def test_preset_routes_agree(self, window_seed, window_i_gamma, window_w, lam):
        w_hat = shifted_superpotential(window_w, window_seed, window_i_gamma, lam)
        assert family_potential_gap(FIG1_PARAMS, w_hat, window_seed, window_i_gamma, lam) < 1e-6
        v_hat = family_potential(
            FIG1_PARAMS, window_w, w_hat, window_seed, window_i_gamma, lam
        )
        expanded = expanded_family_potential(FIG1_PARAMS, window_seed, window_i_gamma, lam)
        scale = np.max(np.abs(expanded.values))
        assert np.max(np.abs(v_hat.values - expanded.values)[2:-2]) / scale < 1e-6

    def test_large_lambda_recovers_model_potential(self, window_seed, window_i_gamma):
        v_hat = expanded_family_potential(FIG1_PARAMS, window_seed, window_i_gamma, 1e9)
        v = potential_samples(FIG1_PARAMS, window_seed.grid)
        assert np.max(np.abs(v_hat.values - v)) / np.max(np.abs(v)) < 1e-6

    def test_disagreement_raises(self, window_seed, window_i_gamma, window_w):
        w_hat = shifted_superpotential(window_w, window_seed, window_i_gamma, 1.0)
        wrong = shifted_superpotential(window_w, window_seed, window_i_gamma, 2.0)
        with pytest.raises(InternalConsistencyError, match="disagree"):
            family_potential(FIG1_PARAMS, window_w, wrong, window_seed, window_i_gamma, 1.0)
        family_potential(FIG1_PARAMS, window_w, w_hat, window_seed, window_i_gamma, 1.0)


class TestFamilyWavefunction:
    def test_toy(self, toy_seed, toy_i_gamma, toy_grid):
        u_hat = family_wavefunction(toy_seed, toy_i_gamma, 1.0)
        a = toy_grid.points
        assert np.allclose(u_hat.values, math.sqrt(2.0) / (a**2 / 2 + 1.0), rtol=1e-9)

    def test_zero_lambda_is_trivial(self, toy_seed, toy_i_gamma):
        u_hat = family_wavefunction(toy_seed, toy_i_gamma, 0.0)
        assert np.all(u_hat.values == 0.0)
        assert np.all(u_hat.derivs == 0.0)

    def test_large_lambda_limit(self, fig1_seed, fig1_i_gamma):
        u_hat = family_wavefunction(fig1_seed, fig1_i_gamma, 1e6)
        assert _deviation(u_hat, fig1_seed) < 5e-6

    def test_negative_limit(self, fig1_seed, fig1_i_gamma):
        u_hat = family_wavefunction(fig1_seed, fig1_i_gamma, -1e6)
        assert _deviation(u_hat.scaled(-1.0), fig1_seed) < 5e-6

    def test_deviation_shrinks_with_lambda(self, fig1_seed, fig1_i_gamma):
        deviations = [
            _deviation(family_wavefunction(fig1_seed, fig1_i_gamma, lam), fig1_seed)
            for lam in FIG1_LAMBDAS
        ]
        assert all(a > b for a, b in zip(deviations, deviations[1:]))
        assert deviations[-1] / deviations[-2] == pytest.approx(161.0 / 411.0, rel=0.05)

    def test_nodes_preserved(self, fig1_seed, fig1_i_gamma):
        u_hat = family_wavefunction(fig1_seed, fig1_i_gamma, 11.0)
        assert np.array_equal(np.sign(u_hat.values), np.sign(fig1_seed.values))


class TestFamilyMember:
    def test_toy(self, toy_params, toy_seed, toy_i_gamma):
        member = build_member(toy_params, toy_seed, toy_i_gamma, 1.0)
        assert isinstance(member, FamilyMember)
        assert member.lambda_param == 1.0
        assert member.w_hat is not None
        assert verify_family_member(toy_params, member) < 1e-8

    def test_preset_window(self, window_seed, window_i_gamma):
        member = build_member(FIG1_PARAMS, window_seed, window_i_gamma, 1.0)
        assert member.w_hat is not None
        assert verify_family_member(FIG1_PARAMS, member) < 1e-5

    def test_preset_full_grid_uses_expanded_potential(self, fig1_seed, fig1_i_gamma):
        member = build_member(FIG1_PARAMS, fig1_seed, fig1_i_gamma, 1.0)
        assert member.w_hat is None
        assert verify_family_member(FIG1_PARAMS, member) < 1e-5

    def test_negative_lambda(self, toy_params, toy_seed, toy_i_gamma):
        with pytest.raises(LambdaDomainError):
            build_member(toy_params, toy_seed, toy_i_gamma, -5.0)
        member = build_member(toy_params, toy_seed, toy_i_gamma, -5.0, allow_negative=True)
        assert np.all(member.u_hat.values < 0)
        assert verify_family_member(toy_params, member) < 1e-8


class TestSweep:
    async def test_members_in_order(self, fig1_seed, fig1_i_gamma):
        members = await sweep_family(FIG1_PARAMS, fig1_seed, fig1_i_gamma, FIG1_LAMBDAS)
        assert [m.lambda_param for m in members] == FIG1_LAMBDAS
        assert all(m.w_hat is None for m in members)

    async def test_node_free_seed(self, window_seed, window_i_gamma):
        members = await sweep_family(FIG1_PARAMS, window_seed, window_i_gamma, [1.0, 61.0])
        assert all(m.w_hat is not None for m in members)
        assert members[1].w_hat.seed_ref == "seed|lambda=61"

    async def test_rejects_before_building(self, toy_params, toy_seed, toy_i_gamma):
        with pytest.raises(LambdaDomainError) as info:
            await sweep_family(toy_params, toy_seed, toy_i_gamma, [1.0, -0.5, 3.0])
        assert info.value.offending == [-0.5]
