"""Tests for the Frobenius analysis and the ODE integrator."""

import math

import numpy as np
import pytest

from src.errors import (
    ConfigurationError,
    DegenerateIndicialError,
    IntegrationError,
    TooSingularError,
)
from src.closed_forms import ClosedFormCase
from src.model import Grid, h0_residual
from src.odesolve import (
    SolutionBasis,
    frobenius_exponents,
    frobenius_seed,
    integrate,
    integrate_span,
    solve_basis,
)
from tests.conftest import FIG1_PARAMS, TIGHT, make_params, make_power


class TestFrobeniusExponents:
    def test_regular_potential(self):
        assert frobenius_exponents(FIG1_PARAMS) == (0.0, 2.0)

    def test_negative_one_plus_q_sorted(self):
        assert frobenius_exponents(make_params(q=-3.0)) == (-2.0, 0.0)

    def test_stiff_real_pair(self):
        params = make_params(gamma=1.0, matter=0.1 / 384.0, q=1.0)
        low, high = frobenius_exponents(params)
        root = math.sqrt(4.0 - 0.4)
        assert low == pytest.approx(1.0 - root / 2)
        assert high == pytest.approx(1.0 + root / 2)
        # both satisfy r^2 - (1 + q) r + 384 matter = 0
        for r in (low, high):
            assert r**2 - 2.0 * r + 0.1 == pytest.approx(0.0, abs=1e-12)

    def test_stiff_complex_pair(self):
        params = make_params(gamma=1.0, matter=0.01, q=1.0)
        low, high = frobenius_exponents(params)
        assert isinstance(low, complex)
        assert low.real == pytest.approx(1.0)
        assert low == pytest.approx(high.conjugate())
        assert abs(low.imag) == pytest.approx(math.sqrt(15.36 - 4.0) / 2)

    def test_too_singular(self):
        with pytest.raises(TooSingularError, match="diverges"):
            frobenius_exponents(make_params(gamma=2.0, matter=0.1))

    def test_matter_free_stiff_is_regular(self):
        assert frobenius_exponents(make_params(gamma=2.0, q=1.0)) == (0.0, 2.0)


class TestFrobeniusSeed:
    def test_two_term_series(self):
        # V = 144 A^3 + ...: u = 1 + 18 A^4 and u = A^2 (1 + 6 A^4)
        value, deriv = frobenius_seed(FIG1_PARAMS, 0.5, 0)
        assert value == pytest.approx(1.0 + 18.0 * 0.5**4)
        assert deriv == pytest.approx(72.0 * 0.5**3)
        value, deriv = frobenius_seed(FIG1_PARAMS, 0.5, 1)
        assert value == pytest.approx(0.25 * (1.0 + 6.0 * 0.5**4))
        assert deriv == pytest.approx(2.0 * 0.5 + 36.0 * 0.5**5)

    def test_free_equation_is_exact(self):
        params = make_params(q=1.0)
        assert frobenius_seed(params, 0.5, 0) == (1.0, 0.0)
        assert frobenius_seed(params, 0.5, 1) == pytest.approx((0.25, 1.0))

    def test_resonant_correction_dropped(self):
        # r = 0 and m = 4 = 1 + q: the next order is logarithmic, keep the leading term
        params = make_params(kappa=1, q=3.0)
        assert frobenius_seed(params, 0.5, 0) == (1.0, 0.0)

    @pytest.mark.parametrize("which", [0, 1])
    def test_series_matches_integration_near_origin(self, which):
        params = make_params(kappa=1, q=0.0)
        start, end = 0.01, 0.2
        value, deriv = frobenius_seed(params, start, which)
        numeric = integrate(params, Grid.linspace(start, end, 200), value, deriv, TIGHT)
        expected, _ = frobenius_seed(params, end, which)
        leading = end ** (0.0, 1.0)[which]
        assert abs(numeric.values[-1] - expected) / expected < 1e-3
        assert abs(numeric.values[-1] - leading) / leading > 1e-2

    def test_degenerate(self):
        with pytest.raises(DegenerateIndicialError, match="logarithmic"):
            frobenius_seed(make_params(q=-1.0), 0.5, 0)

    @pytest.mark.parametrize("which", [0, 1])
    def test_complex_pair_gives_real_oscillating_seeds(self, which):
        params = make_params(gamma=1.0, matter=0.01, q=1.0)
        low, _ = frobenius_exponents(params)
        s, t = low.real, abs(low.imag)
        a, h = 0.3, 1e-6

        value, deriv = frobenius_seed(params, a, which)
        trig = math.cos if which == 0 else math.sin
        assert value == pytest.approx(a**s * trig(t * math.log(a)))

        fd = frobenius_seed(params, a + h, which)[0] - frobenius_seed(params, a - h, which)[0]
        assert deriv == pytest.approx(fd / (2 * h), rel=1e-6)


class TestIntegrate:
    def test_free_linear(self):
        params = make_params()
        grid = Grid.linspace(0.5, 2.0, 100)
        u = integrate(params, grid, 1.0, 2.0)
        assert np.allclose(u.values, 1.0 + 2.0 * (grid.points - 0.5), rtol=1e-9)
        assert np.allclose(u.derivs, 2.0, rtol=1e-9)

    def test_free_with_ordering(self):
        # A u'' - u' = 0 has solutions c1 + c2 A^2
        params = make_params(q=1.0)
        grid = Grid.linspace(0.5, 2.0, 100)
        u = integrate(params, grid, 1.0, 1.0)
        assert np.allclose(u.values, 0.75 + grid.points**2, rtol=1e-9)

    def test_backward_span(self):
        params = make_params(q=1.0)
        points = np.linspace(2.0, 0.5, 50)
        values, derivs = integrate_span(params, points, 4.0, 4.0)
        assert np.allclose(values, points**2, rtol=1e-9)
        assert np.allclose(derivs, 2 * points, rtol=1e-9)

    def test_rejects_bad_points(self):
        params = make_params()
        with pytest.raises(ConfigurationError, match="two points"):
            integrate_span(params, np.array([1.0]), 1.0, 0.0)
        with pytest.raises(ConfigurationError, match="positive"):
            integrate_span(params, np.array([1.0, 0.5, -0.1]), 1.0, 0.0)
        with pytest.raises(ConfigurationError, match="monotone"):
            integrate_span(params, np.array([0.5, 1.0, 0.8]), 1.0, 0.0)

    def test_matches_closed_form(self, fig1_case):
        grid = Grid.linspace(0.6, 1.5, 2000)
        exact = fig1_case.sample(grid)
        numeric = integrate(FIG1_PARAMS, grid, exact.values[0], exact.derivs[0], TIGHT)
        scale = exact.sup_norm()
        assert np.max(np.abs(numeric.values - exact.values)) / scale < 1e-7

    def test_numeric_solution_has_small_residual(self):
        grid = Grid.linspace(0.6, 1.5, 2000)
        u = integrate(FIG1_PARAMS, grid, 1.0, 0.0, TIGHT)
        assert h0_residual(FIG1_PARAMS, u) < 1e-6

    @pytest.mark.parametrize("alpha", [3.7, -2.5])
    def test_linear_in_initial_data(self, alpha):
        grid = Grid.linspace(0.6, 1.5, 500)
        base = integrate(FIG1_PARAMS, grid, 1.0, 0.5, TIGHT)
        scaled = integrate(FIG1_PARAMS, grid, alpha * 1.0, alpha * 0.5, TIGHT)
        gap = np.abs(scaled.values - alpha * base.values)
        assert np.max(gap) / (abs(alpha) * base.sup_norm()) < 1e-8

    def test_residual_converges_under_refinement(self):
        coarse = integrate(FIG1_PARAMS, Grid.linspace(0.6, 1.5, 250), 1.0, 0.0, TIGHT)
        fine = integrate(FIG1_PARAMS, Grid.linspace(0.6, 1.5, 499), 1.0, 0.0, TIGHT)
        # fourth-order stencil: halving the step should gain at least 2^3
        assert h0_residual(FIG1_PARAMS, coarse) / h0_residual(FIG1_PARAMS, fine) > 8.0

    def test_overflow(self):
        params = make_params(cc=1e4)
        grid = Grid.linspace(1.0, 3.0, 200)
        with pytest.raises(IntegrationError, match="exceeded") as info:
            integrate(params, grid, 1.0, 0.0)
        assert info.value.code == 2
        assert 1.0 < info.value.last_good < 3.0


class TestSolutionBasis:
    def test_wronskian_is_constant(self):
        grid = Grid.linspace(0.6, 1.5, 2000)
        basis = solve_basis(FIG1_PARAMS, grid, TIGHT)
        wr = basis.wronskian(FIG1_PARAMS.q)

        u1, du1 = frobenius_seed(FIG1_PARAMS, 0.6, 0)
        u2, du2 = frobenius_seed(FIG1_PARAMS, 0.6, 1)
        start = (u1 * du2 - du1 * u2) / 0.6
        assert wr[0] == pytest.approx(start, rel=1e-12)
        assert np.allclose(wr, start, rtol=1e-7)

    def test_free_basis(self):
        grid = Grid.linspace(0.5, 2.0, 100)
        basis = solve_basis(make_params(q=1.0), grid)
        assert np.allclose(basis.u1.values, 1.0, rtol=1e-9)
        assert np.allclose(basis.u2.values, grid.points**2, rtol=1e-9)

    def test_fit_recovers_coefficients(self, fig1_case):
        grid = Grid.linspace(0.6, 1.5, 2000)
        target = fig1_case.sample(grid)
        basis = solve_basis(FIG1_PARAMS, grid, TIGHT).fit(target)

        start = np.array([
            [basis.u1.values[0], basis.u2.values[0]],
            [basis.u1.derivs[0], basis.u2.derivs[0]],
        ])
        c1, c2 = np.linalg.solve(start, [target.values[0], target.derivs[0]])
        assert basis.c1 == pytest.approx(c1, rel=1e-6)
        assert basis.c2 == pytest.approx(c2, rel=1e-6)
        combined = basis.combined()
        assert np.max(np.abs(combined.values - target.values)) / target.sup_norm() < 1e-6

    def test_fit_on_few_points_reproduces_modified_bessel_pair(self):
        # gamma = -1, m^2 = 0, kappa = 1, q = 1: I_1/2 and K_1/2 of 6 A^2, times A
        params = make_params(kappa=1, q=1.0)
        grid = Grid.linspace(0.2, 1.5, 2000)
        target = ClosedFormCase.for_params(params, (1.0, 1.0)).sample(grid)
        fitted = solve_basis(params, grid, TIGHT).fit(target, np.linspace(0, 900, 10))

        combined = fitted.combined()
        elsewhere = slice(1000, None)
        gap = np.abs(combined.values[elsewhere] - target.values[elsewhere])
        assert np.max(gap) / target.sup_norm() < 1e-6

    def test_grids_must_match(self):
        u1 = make_power(Grid.linspace(0.5, 1.0, 20), 1.0)
        u2 = make_power(Grid.linspace(0.5, 1.5, 20), 1.0)
        with pytest.raises(ConfigurationError, match="share"):
            SolutionBasis(u1, u2)
