"""Shared fixtures for the magnomech tests."""

import sys
from pathlib import Path

import pytest

# Add src to path
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT / 'src'))

from backend.models.params import SystemParams, DriveParams
from backend.services import (
    ModelService, FixedPointService, DynamicsService, LyapunovService,
    EntanglementService, SweepService, ExportService,
)

NUMERICS = {
    "stability_margin": 1e-12,
    "physicality_tolerance": 1e-9,
    "residual_tolerance": 1e-10,
    "radicand_tolerance": 1e-12,
    "low_excitation_threshold": 0.1,
    "lyapunov_solver": "direct",
}


@pytest.fixture
def numerics():
    return dict(NUMERICS)


@pytest.fixture
def fig2_params():
    """Weak-coupling baseline (blue line)."""
    return SystemParams(
        delta_c=-1.0, delta_m=-1.0,
        g_am=0.1, G_bm=0.035,
        kappa_a=0.1, kappa_m=0.1, gamma_b=0.01,
        nbar_b=0.2,
    )


@pytest.fixture
def fig4_params():
    """Reservoir-engineering regime at G_bm/g_am = 0.98, squeezing interaction only."""
    return SystemParams(
        delta_c=-1.0, delta_m=-1.0,
        g_am=0.65, G_bm=0.98 * 0.65, interaction="rwa",
        kappa_a=0.01, kappa_m=0.1, gamma_b=0.01,
        nbar_b=0.2,
    )


@pytest.fixture
def unstable_params():
    """Resonant two-mode squeezing far above every decay rate."""
    return SystemParams(
        delta_c=-1.0, delta_m=-1.0,
        g_am=0.0, G_bm=0.5,
        kappa_a=1e-3, kappa_m=1e-3, gamma_b=1e-3,
    )


@pytest.fixture
def drive():
    return DriveParams(B1=3.9e-5)


@pytest.fixture
def model_service(numerics):
    return ModelService(numerics)


@pytest.fixture
def fixed_point_service(numerics):
    return FixedPointService(numerics)


@pytest.fixture
def dynamics_service(numerics):
    return DynamicsService(numerics)


@pytest.fixture
def lyapunov_service(numerics):
    return LyapunovService(config=numerics)


@pytest.fixture
def entanglement_service(numerics):
    return EntanglementService(numerics)


@pytest.fixture
def sweep_service(numerics):
    return SweepService(numerics)


@pytest.fixture
def export_service():
    return ExportService()


@pytest.fixture
def steady_state(dynamics_service, lyapunov_service):
    """Solve the steady state of a parameter set."""
    def solve(params):
        A = dynamics_service.drift_matrix(params, params.G_bm)
        D = dynamics_service.diffusion_matrix(params)
        return lyapunov_service.solve_lyapunov(A, D)
    return solve
