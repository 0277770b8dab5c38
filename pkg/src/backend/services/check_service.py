import logging
import math
import traceback
from typing import List, Optional, Dict, Any, Callable, Tuple

import numpy as np

from ..models.entanglement import ModePair, ReducedCovariance
from ..models.params import QUADRATURES
from ..providers import DirectLyapunovSolver, SchurLyapunovSolver
from .audit_service import AuditService
from .dynamics_service import DynamicsService
from .entanglement_service import EntanglementService
from .figure_service import baseline_params, reservoir_params
from .lyapunov_service import LyapunovService

logger = logging.getLogger(__name__)


class CheckService:
    """Self-contained invariant suite behind the ``check`` command."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.results: Dict[str, Dict[str, Any]] = {}
        self.dynamics_service = DynamicsService(self.config)
        self.lyapunov_service = LyapunovService(config=self.config)
        self.entanglement_service = EntanglementService(self.config)
        self.audit_service = AuditService()

    def checks(self) -> List[Tuple[str, Callable[[], Tuple[bool, str]]]]:
        return [
            ("vacuum_separable", self.check_vacuum),
            ("two_mode_squeezed_closed_form", self.check_two_mode_squeezed),
            ("decoupled_thermal_state", self.check_decoupled_thermal),
            ("solver_agreement", self.check_solver_agreement),
            ("time_domain_oracle", self.check_time_domain_oracle),
            ("partial_transpose_eta", self.check_partial_transpose),
            ("coupling_necessity", self.check_coupling_necessity),
            ("physicality", self.check_physicality),
        ]

    def check_vacuum(self) -> Tuple[bool, str]:
        rc = ReducedCovariance(sigma_prime=QUADRATURES.vacuum(2), pair=ModePair.AB)
        E, eta = self.entanglement_service.log_negativity(rc)
        return E == 0.0 and abs(eta - 0.5) < 1e-12, f"E = {E}, eta = {eta:.15g}"

    def check_two_mode_squeezed(self) -> Tuple[bool, str]:
        worst = 0.0
        for r in (0.1, 0.5, 1.0, 2.0):
            sigma = self.entanglement_service.two_mode_squeezed_covariance(r)
            E, _ = self.entanglement_service.log_negativity(ReducedCovariance(sigma, ModePair.AB))
            worst = max(worst, abs(E - 2.0 * r))
        return worst < 1e-10, f"max |E - 2r| = {worst:.3g}"

    def check_decoupled_thermal(self) -> Tuple[bool, str]:
        params = baseline_params(g_am=0.0, G_bm=0.0, nbar_a=0.3, nbar_m=1.5, nbar_b=20.0)
        A = self.dynamics_service.drift_matrix(params, 0.0)
        D = self.dynamics_service.diffusion_matrix(params)
        sigma = self.lyapunov_service.solve_lyapunov(A, D).sigma
        expected = np.diag([(2.0 * n + 1.0) / 2.0 for n in (0.3, 0.3, 1.5, 1.5, 20.0, 20.0)])
        error = float(np.max(np.abs(sigma - expected)))
        return error < 1e-12, f"max deviation {error:.3g}"

    def check_solver_agreement(self) -> Tuple[bool, str]:
        A, D = self._reservoir_point(0.9)
        direct = DirectLyapunovSolver().solve(A, D)
        schur = SchurLyapunovSolver().solve(A, D)
        error = float(np.max(np.abs(direct - schur)))
        return error < 1e-8, f"direct vs Schur {error:.3g}"

    def check_time_domain_oracle(self) -> Tuple[bool, str]:
        params = baseline_params()
        A = self.dynamics_service.drift_matrix(params, params.G_bm)
        D = self.dynamics_service.diffusion_matrix(params)
        verdict = self.dynamics_service.is_stable(A)
        steady = self.lyapunov_service.solve_lyapunov(A, D).sigma
        t_final = 50.0 / abs(verdict.max_real_part)
        evolved = self.dynamics_service.evolve_covariance(A, D, QUADRATURES.vacuum(3), t_final, dt=0.1)
        error = float(np.max(np.abs(steady - evolved)))
        return error < 1e-6, f"Lyapunov vs RK4 at t = {t_final:.4g}: {error:.3g}"

    def check_partial_transpose(self) -> Tuple[bool, str]:
        A, D = self._reservoir_point(0.9)
        sigma = self.lyapunov_service.solve_lyapunov(A, D).sigma
        worst = 0.0
        for pair in ModePair:
            rc = self.entanglement_service.reduce_covariance(sigma, pair)
            _, eta = self.entanglement_service.log_negativity(rc)
            worst = max(worst, abs(eta - self.entanglement_service.partial_transpose_eta(rc)))
        return worst < 1e-9, f"closed form vs numerical eta {worst:.3g}"

    def check_coupling_necessity(self) -> Tuple[bool, str]:
        largest = 0.0
        for params in (baseline_params(g_am=0.0), baseline_params(G_bm=0.0)):
            for delta_m in np.linspace(-2.0, 0.0, 21):
                point = params.with_updates(delta_m=float(delta_m))
                A = self.dynamics_service.drift_matrix(point, point.G_bm)
                if not self.dynamics_service.is_stable(A).stable:
                    continue
                sigma = self.lyapunov_service.solve_lyapunov(
                    A, self.dynamics_service.diffusion_matrix(point)
                ).sigma
                E, _ = self.entanglement_service.log_negativity(
                    self.entanglement_service.reduce_covariance(sigma, ModePair.AB)
                )
                largest = max(largest, E)
        return largest < 1e-10, f"max E_ab without one coupling = {largest:.3g}"

    def check_physicality(self) -> Tuple[bool, str]:
        smallest = math.inf
        for ratio in (0.1, 0.5, 0.9, 0.98):
            A, D = self._reservoir_point(ratio)
            smallest = min(smallest, self.lyapunov_service.solve_lyapunov(A, D).min_symplectic_eigenvalue)
        bound = QUADRATURES.vacuum_diagonal - self.entanglement_service.physicality_tolerance
        return smallest >= bound, f"smallest symplectic eigenvalue {smallest:.12g}"

    def run_all_checks(self) -> Tuple[int, int]:
        """Run every check; returns (passed, failed)."""
        logger.info("Running invariant checks...")
        passed = failed = 0

        for name, check in self.checks():
            try:
                ok, details = check()
                self.results[name] = {"status": "success" if ok else "failed", "details": details}
            except Exception as e:
                logger.debug(traceback.format_exc())
                ok = False
                self.results[name] = {"status": "error", "details": str(e)}

            if ok:
                passed += 1
                logger.info(f"  PASS {name}: {self.results[name]['details']}")
            else:
                failed += 1
                logger.error(f"  FAIL {name}: {self.results[name]['details']}")

        logger.info(f"Checks: {passed} passed, {failed} failed")
        self.audit_service.log_action(
            "CHECK_COMPLETED",
            entity_type="Check",
            details={"passed": passed, "failed": failed},
        )
        return passed, failed

    def _reservoir_point(self, ratio: float) -> Tuple[np.ndarray, np.ndarray]:
        params = reservoir_params(G_bm=ratio * 0.65)
        return (
            self.dynamics_service.drift_matrix(params, params.G_bm),
            self.dynamics_service.diffusion_matrix(params),
        )
