import logging
from typing import Optional, Dict, Any

import numpy as np

from ..errors import NumericalError, StabilityError
from ..models.covariance import SteadyStateCovariance
from ..providers.base import ILyapunovSolver
from ..providers.direct_solver import DirectLyapunovSolver
from ..providers.schur_solver import SchurLyapunovSolver
from .dynamics_service import DynamicsService
from .entanglement_service import EntanglementService

logger = logging.getLogger(__name__)

SOLVERS = {
    "direct": DirectLyapunovSolver,
    "schur": SchurLyapunovSolver,
}


class LyapunovService:
    """Steady-state covariance from A sigma + sigma A^T = -D."""

    def __init__(self, solver: ILyapunovSolver = None, config: Optional[Dict[str, Any]] = None):
        config = config or {}
        if solver is None:
            name = config.get("lyapunov_solver", "direct")
            if name not in SOLVERS:
                raise NumericalError(f"Unknown Lyapunov solver: {name}")
            solver = SOLVERS[name]()
        self.solver = solver
        self.residual_tolerance = float(config.get("residual_tolerance", 1e-10))
        self.dynamics_service = DynamicsService(config)
        self.entanglement_service = EntanglementService(config)

    def solve_lyapunov(self, A: np.ndarray, D: np.ndarray) -> SteadyStateCovariance:
        """Solve for the steady-state covariance; refuses unstable drift matrices."""
        A = np.asarray(A, dtype=float)
        D = np.asarray(D, dtype=float)
        if A.shape != D.shape or A.shape[0] != A.shape[1]:
            raise NumericalError(f"Shape mismatch: A {A.shape}, D {D.shape}")

        verdict = self.dynamics_service.is_stable(A)
        if not verdict.stable:
            raise StabilityError(
                f"Cannot solve Lyapunov equation: drift matrix is {verdict.describe()}",
                verdict=verdict,
            )

        sigma = self.solver.solve(A, D)
        bound = self.residual_tolerance * max(float(np.max(np.abs(D))), np.finfo(float).tiny)
        residual = self.lyapunov_residual(A, D, sigma)
        if residual > bound:
            logger.warning(
                f"Lyapunov residual {residual:.3g} above {bound:.3g} "
                f"({self.solver.get_solver_name()}); refining"
            )
            sigma = self.solver.refine(A, D, sigma)
            sigma = 0.5 * (sigma + sigma.T)
            residual = self.lyapunov_residual(A, D, sigma)
            if residual > bound:
                raise NumericalError(
                    f"Lyapunov residual {residual:.3g} exceeds {bound:.3g} after refinement "
                    f"(max Re(lambda) = {verdict.max_real_part:.3g})"
                )

        physical, smallest = self.entanglement_service.physicality_check(sigma)
        if not physical:
            logger.warning(f"Unphysical steady state: smallest symplectic eigenvalue {smallest:.12g}")

        return SteadyStateCovariance(
            sigma=sigma,
            residual_norm=residual,
            physical=physical,
            min_symplectic_eigenvalue=smallest,
        )

    @staticmethod
    def lyapunov_residual(A: np.ndarray, D: np.ndarray, sigma: np.ndarray) -> float:
        """Max-abs entry of A sigma + sigma A^T + D."""
        return float(np.max(np.abs(A @ sigma + sigma @ A.T + D)))
