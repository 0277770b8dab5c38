"""Tests for the steady-state Lyapunov solve."""

import numpy as np
import pytest

from backend.errors import NumericalError, StabilityError
from backend.models.params import QUADRATURES
from backend.providers import DirectLyapunovSolver, SchurLyapunovSolver
from backend.services import LyapunovService


class TestSolveLyapunov:

    def test_decoupled_thermal_state(self, lyapunov_service, dynamics_service, fig2_params):
        params = fig2_params.with_updates(g_am=0.0, G_bm=0.0, nbar_a=0.3, nbar_m=1.5, nbar_b=20.0)
        A = dynamics_service.drift_matrix(params, 0.0)
        D = dynamics_service.diffusion_matrix(params)
        result = lyapunov_service.solve_lyapunov(A, D)
        expected = np.diag([0.8, 0.8, 2.0, 2.0, 20.5, 20.5])
        assert np.max(np.abs(result.sigma - expected)) < 1e-12
        assert result.physical

    def test_zero_temperature_gives_vacuum(self, lyapunov_service, dynamics_service, fig2_params):
        params = fig2_params.with_updates(g_am=0.0, G_bm=0.0, nbar_b=0.0)
        result = lyapunov_service.solve_lyapunov(
            dynamics_service.drift_matrix(params, 0.0), dynamics_service.diffusion_matrix(params)
        )
        np.testing.assert_allclose(result.sigma, QUADRATURES.vacuum(3), atol=1e-12)
        assert result.min_symplectic_eigenvalue == pytest.approx(0.5, abs=1e-12)

    def test_residual_and_symmetry(self, lyapunov_service, dynamics_service, fig4_params):
        A = dynamics_service.drift_matrix(fig4_params, fig4_params.G_bm)
        D = dynamics_service.diffusion_matrix(fig4_params)
        result = lyapunov_service.solve_lyapunov(A, D)
        assert np.array_equal(result.sigma, result.sigma.T)
        assert result.residual_norm <= 1e-10 * np.max(np.abs(D))
        assert result.physical

    def test_residual_of_zero_is_max_noise(self, dynamics_service, fig2_params):
        A = dynamics_service.drift_matrix(fig2_params, 0.035)
        D = dynamics_service.diffusion_matrix(fig2_params)
        assert LyapunovService.lyapunov_residual(A, D, np.zeros((6, 6))) == pytest.approx(0.05)

    def test_unstable_drift_refused(self, lyapunov_service, dynamics_service, unstable_params):
        A = dynamics_service.drift_matrix(unstable_params, 0.5)
        with pytest.raises(StabilityError) as excinfo:
            lyapunov_service.solve_lyapunov(A, dynamics_service.diffusion_matrix(unstable_params))
        assert excinfo.value.verdict.max_real_part > 0

    def test_shape_mismatch(self, lyapunov_service):
        with pytest.raises(NumericalError):
            lyapunov_service.solve_lyapunov(-np.eye(6), np.eye(4))

    def test_unknown_solver_name(self):
        with pytest.raises(NumericalError):
            LyapunovService(config={"lyapunov_solver": "bartels"})

    def test_mode_relabelling(self, lyapunov_service, dynamics_service, fig4_params):
        A = dynamics_service.drift_matrix(fig4_params, fig4_params.G_bm)
        D = dynamics_service.diffusion_matrix(fig4_params)
        sigma = lyapunov_service.solve_lyapunov(A, D).sigma

        P = np.eye(6)[[4, 5, 0, 1, 2, 3]]
        permuted = lyapunov_service.solve_lyapunov(P @ A @ P.T, P @ D @ P.T).sigma
        np.testing.assert_allclose(permuted, P @ sigma @ P.T, atol=1e-10)

    def test_non_diagonal_noise(self, lyapunov_service):
        A = np.array([[-1.0, 0.5], [-0.5, -2.0]])
        D = np.array([[1.0, 0.3], [0.3, 2.0]])
        sigma = lyapunov_service.solve_lyapunov(A, D).sigma
        assert LyapunovService.lyapunov_residual(A, D, sigma) < 1e-12


class TestSolverAgreement:

    @pytest.mark.parametrize("ratio", [0.1, 0.5, 0.9, 0.98])
    def test_direct_matches_schur(self, dynamics_service, fig4_params, ratio):
        params = fig4_params.with_updates(G_bm=ratio * 0.65)
        A = dynamics_service.drift_matrix(params, params.G_bm)
        D = dynamics_service.diffusion_matrix(params)
        direct = DirectLyapunovSolver().solve(A, D)
        schur = SchurLyapunovSolver().solve(A, D)
        assert np.max(np.abs(direct - schur)) < 1e-8

    def test_configured_schur_solver(self, numerics, dynamics_service, fig2_params):
        service = LyapunovService(config={**numerics, "lyapunov_solver": "schur"})
        assert service.solver.get_solver_name() == "schur"
        A = dynamics_service.drift_matrix(fig2_params, 0.035)
        result = service.solve_lyapunov(A, dynamics_service.diffusion_matrix(fig2_params))
        assert result.physical


@pytest.mark.slow
def test_matches_time_domain_integration(lyapunov_service, dynamics_service, fig2_params):
    A = dynamics_service.drift_matrix(fig2_params, 0.035)
    D = dynamics_service.diffusion_matrix(fig2_params)
    steady = lyapunov_service.solve_lyapunov(A, D).sigma
    # The slowest mode decays at 2|max Re(lambda)|, far below gamma_b here
    slowest = abs(dynamics_service.is_stable(A).max_real_part)
    evolved = dynamics_service.evolve_covariance(A, D, QUADRATURES.vacuum(3), 25.0 / slowest, dt=0.5)
    assert np.max(np.abs(steady - evolved)) < 1e-6
