import logging
import math
from pathlib import Path
from typing import List, Optional, Dict, Any, Sequence, Tuple

import numpy as np

from ..errors import DivergenceError, NumericalError
from ..models.dynamics import DriftDiffusion, StabilityVerdict
from ..models.params import Interaction, SystemParams

logger = logging.getLogger(__name__)


class DynamicsService:
    """Linearized fluctuation dynamics: drift, diffusion, stability, time evolution."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        config = config or {}
        self.stability_margin = float(config.get("stability_margin", 1e-12))
        self.step_fraction = float(config.get("integrator_step_fraction", 1e-3))
        self.divergence_bound = float(config.get("divergence_bound", 1e12))

    def drift_matrix(self, params: SystemParams, G_bm: float) -> np.ndarray:
        """Drift matrix for M = [x1, y1, x2, y2, q, p].

        With the full interaction the counter-rotating terms are kept and
        only x2 and q are coupled. The ``rwa`` form couples the pairs
        (x2, p) and (y2, q), from G_bm (x2 q - y2 p).
        """
        ka, km, gb = params.kappa_a / 2.0, params.kappa_m / 2.0, params.gamma_b / 2.0
        dc, dm, g, wb = params.delta_c, params.delta_m, params.g_am, params.omega_b
        A = np.array([
            [-ka,  dc,  0.0,   g,   0.0,  0.0],
            [-dc, -ka,  -g,   0.0,  0.0,  0.0],
            [0.0,   g,  -km,   dm,  0.0,  0.0],
            [ -g, 0.0,  -dm,  -km,  0.0,  0.0],
            [0.0, 0.0,  0.0,  0.0,  -gb,   wb],
            [0.0, 0.0,  0.0,  0.0,  -wb,  -gb],
        ])
        if params.interaction == Interaction.RWA:
            A[2, 5] = A[3, 4] = A[4, 3] = A[5, 2] = -G_bm
        else:
            A[3, 4] = A[5, 2] = -2.0 * G_bm
        return A

    def diffusion_matrix(self, params: SystemParams) -> np.ndarray:
        """Diagonal noise injection matrix, including the overall factor 1/2."""
        a = params.kappa_a * (2.0 * params.nbar_a + 1.0)
        m = params.kappa_m * (2.0 * params.nbar_m + 1.0)
        b = params.gamma_b * (2.0 * params.nbar_b + 1.0)
        return np.diag([a, a, m, m, b, b]) / 2.0

    def drift_diffusion(self, params: SystemParams, G_bm: float) -> DriftDiffusion:
        return DriftDiffusion(A=self.drift_matrix(params, G_bm), D=self.diffusion_matrix(params))

    def is_stable(self, A: np.ndarray) -> StabilityVerdict:
        """Routh-Hurwitz stability from the eigenvalues of A."""
        A = np.asarray(A, dtype=float)
        if not np.all(np.isfinite(A)):
            raise NumericalError("Drift matrix has non-finite entries")
        try:
            eigenvalues = np.linalg.eigvals(A)
        except np.linalg.LinAlgError as e:
            raise NumericalError(
                f"Eigenvalue solver did not converge (cond(A) = {np.linalg.cond(A):.3g}): {e}"
            )

        max_real_part = float(np.max(eigenvalues.real))
        return StabilityVerdict(
            stable=max_real_part < -self.stability_margin,
            eigenvalues=eigenvalues,
            max_real_part=max_real_part,
        )

    def default_step(self, params: Optional[SystemParams] = None) -> float:
        omega_b = params.omega_b if params is not None else 1.0
        return self.step_fraction * 2.0 * math.pi / omega_b

    def evolve_covariance(
        self,
        A: np.ndarray,
        D: np.ndarray,
        sigma0: np.ndarray,
        t_final: float,
        dt: Optional[float] = None,
    ) -> np.ndarray:
        """Integrate d(sigma)/dt = A sigma + sigma A^T + D with fixed-step RK4."""
        return self.covariance_trajectory(A, D, sigma0, [t_final], dt)[-1]

    def covariance_trajectory(
        self,
        A: np.ndarray,
        D: np.ndarray,
        sigma0: np.ndarray,
        times: Sequence[float],
        dt: Optional[float] = None,
    ) -> List[np.ndarray]:
        """Covariance snapshots at increasing times, all from one RK4 run."""
        dt = self.default_step() if dt is None else float(dt)
        if not dt > 0:
            raise ValueError(f"dt must be > 0 (got {dt})")
        times = [float(t) for t in times]
        if any(t < 0 for t in times) or times != sorted(times):
            raise ValueError("times must be non-negative and increasing")

        n = A.shape[0]
        step, offset = self._rk4_map(A, D, dt)
        transpose = np.arange(n * n).reshape(n, n).T.ravel()

        state = np.asarray(sigma0, dtype=float).ravel().copy()
        snapshots: List[np.ndarray] = []
        t = 0.0
        steps_taken = 0
        for target in times:
            full_steps = int(math.floor((target - t) / dt + 1e-9))
            for _ in range(full_steps):
                state = step @ state + offset
                state = 0.5 * (state + state[transpose])
                steps_taken += 1
                if steps_taken % 256 == 0:
                    self._check_divergence(state, t + dt)
            t += full_steps * dt

            remainder = target - t
            if remainder > 1e-12 * max(1.0, target):
                partial, partial_offset = self._rk4_map(A, D, remainder)
                snapshot = partial @ state + partial_offset
                snapshot = 0.5 * (snapshot + snapshot[transpose])
            else:
                snapshot = state
            self._check_divergence(snapshot, target)
            snapshots.append(snapshot.reshape(n, n).copy())

        return snapshots

    def step_doubling_error(
        self,
        A: np.ndarray,
        D: np.ndarray,
        sigma0: np.ndarray,
        t_final: float,
        dt: Optional[float] = None,
    ) -> float:
        """Max element change when the integration step is halved."""
        dt = self.default_step() if dt is None else float(dt)
        coarse = self.evolve_covariance(A, D, sigma0, t_final, dt)
        fine = self.evolve_covariance(A, D, sigma0, t_final, dt / 2.0)
        return float(np.max(np.abs(coarse - fine)))

    def dump_matrices(self, A: np.ndarray, D: np.ndarray, prefix: Path) -> Tuple[Path, Path]:
        """Write A and D as plain-text row-major matrices at full precision."""
        prefix = Path(prefix)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        paths = (prefix.with_name(prefix.name + "_A.txt"), prefix.with_name(prefix.name + "_D.txt"))
        for matrix, path in zip((A, D), paths):
            np.savetxt(path, matrix, fmt="%.17g")
        logger.debug(f"Matrices written to {paths[0]} and {paths[1]}")
        return paths

    @staticmethod
    def _rk4_map(A: np.ndarray, D: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
        # For the linear flow s' = L s + d, one classical RK4 step of size h is
        # s -> P(hL) s + h Q(hL) d with the truncated exponential series below.
        n = A.shape[0]
        identity = np.eye(n)
        L = np.kron(A, identity) + np.kron(identity, A)
        hL = h * L
        hL2 = hL @ hL
        hL3 = hL2 @ hL
        eye = np.eye(n * n)
        P = eye + hL + hL2 / 2.0 + hL3 / 6.0 + hL3 @ hL / 24.0
        Q = eye + hL / 2.0 + hL2 / 6.0 + hL3 / 24.0
        return P, h * (Q @ np.asarray(D, dtype=float).ravel())

    def _check_divergence(self, state: np.ndarray, t: float) -> None:
        peak = float(np.max(np.abs(state)))
        if not np.isfinite(peak) or peak > self.divergence_bound:
            raise DivergenceError(
                f"Covariance diverged at t = {t:.6g} (max |sigma| = {peak:.3g})"
            )
