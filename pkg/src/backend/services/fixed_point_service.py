import cmath
import logging
import math
from typing import List, Optional, Dict, Any

import numpy as np

from ..errors import ConsistencyError, DomainError, ParameterError
from ..models.fixed_point import ClassicalFixedPoint
from ..models.params import SystemParams, DriveParams
from .model_service import ModelService

logger = logging.getLogger(__name__)


class FixedPointService:
    """Classical steady state of the driven system.

    Eliminating alpha and beta from the steady-state equations leaves

        x [a^2 + (d - K x)^2] = Omega^2,   x = |epsilon|^2

    with a = kappa_m/2 + Re C, d = Delta_m' + Im C, C = g_am^2 / (i Delta_c + kappa_a/2)
    and K = 2 g_bm^2 omega_b / (omega_b^2 + gamma_b^2/4), the mechanical shift of
    the magnon detuning per magnon. Every real non-negative root is a branch.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        config = config or {}
        self.low_excitation_threshold = float(config.get("low_excitation_threshold", 0.1))
        self.residual_tolerance = float(config.get("fixed_point_tolerance", 1e-10))
        self.model_service = ModelService(config)

    def cubic_coefficients(self, params: SystemParams, omega: float) -> np.ndarray:
        """Coefficients (highest power first) of the cubic in |epsilon|^2."""
        a, d, K = self._reduced_terms(params)
        return np.array([K * K, -2.0 * d * K, a * a + d * d, -omega * omega])

    def solve_fixed_point(self, params: SystemParams, omega: float) -> List[ClassicalFixedPoint]:
        """All classical steady states for drive rate omega, sorted by |epsilon|^2."""
        if params.g_bm_single is None:
            raise ParameterError({"g_bm_single": "required for the classical solve"})

        roots = self._real_roots(params, omega)
        if not roots:
            raise ConsistencyError(
                f"No real non-negative root of the steady-state cubic (omega={omega})"
            )

        if len(roots) > 1:
            logger.warning(
                f"Bistable drive: {len(roots)} classical branches at omega={omega:g}"
            )

        return [self._back_substitute(params, omega, x, len(roots)) for x in roots]

    def low_excitation_check(self, fp: ClassicalFixedPoint, drive: DriveParams) -> float:
        """Magnon number relative to 2 N s; above the threshold is only a warning."""
        ratio = fp.magnon_number / self.model_service.spin_capacity(drive)
        if ratio > self.low_excitation_threshold:
            logger.warning(
                f"Magnon number {fp.magnon_number:.3g} is {ratio:.3g} of 2Ns; "
                f"low-excitation condition not satisfied"
            )
        return ratio

    def drive_for_coupling(self, params: SystemParams, G_target: float) -> float:
        """Drive rate whose steady state has |g_bm epsilon| = G_target."""
        if not params.g_bm_single:
            raise DomainError("g_bm_single must be non-zero to invert the coupling")
        if G_target < 0:
            raise DomainError(f"G_target must be >= 0 (got {G_target})")

        a, d, K = self._reduced_terms(params)
        x = (G_target / params.g_bm_single) ** 2
        return math.sqrt(x * (a * a + (d - K * x) ** 2))

    def _reduced_terms(self, params: SystemParams):
        g0 = params.g_bm_single or 0.0
        C = params.g_am ** 2 / complex(params.kappa_a / 2.0, params.delta_c)
        a = params.kappa_m / 2.0 + C.real
        d = params.delta_m + C.imag
        K = 2.0 * g0 * g0 * params.omega_b / (params.omega_b ** 2 + params.gamma_b ** 2 / 4.0)
        return a, d, K

    def _real_roots(self, params: SystemParams, omega: float) -> List[float]:
        coefficients = self.cubic_coefficients(params, omega)
        polynomial = np.polynomial.Polynomial(coefficients[::-1])
        derivative = polynomial.deriv()

        scale = max(1.0, float(np.max(np.abs(coefficients))))
        candidates = []
        for root in np.roots(coefficients):
            if abs(root.imag) > 1e-7 * max(1.0, abs(root.real)):
                continue
            x = float(root.real)
            # Newton polish
            for _ in range(3):
                slope = derivative(x)
                if slope == 0:
                    break
                x -= polynomial(x) / slope
            if x < -1e-12 * scale:
                continue
            candidates.append(max(x, 0.0))

        roots: List[float] = []
        for x in sorted(candidates):
            if not roots or abs(x - roots[-1]) > 1e-9 * max(1.0, abs(x)):
                roots.append(x)
        return roots

    def _back_substitute(
        self, params: SystemParams, omega: float, x: float, branch_count: int
    ) -> ClassicalFixedPoint:
        g0 = params.g_bm_single or 0.0
        a, d, K = self._reduced_terms(params)

        epsilon = omega / complex(a, d - K * x)
        alpha = -1j * params.g_am * epsilon / complex(params.kappa_a / 2.0, params.delta_c)
        beta = -1j * g0 * abs(epsilon) ** 2 / complex(params.gamma_b / 2.0, params.omega_b)
        delta_m_eff = params.delta_m + 2.0 * g0 * beta.real

        residual = self._residual(params, omega, alpha, epsilon, beta, delta_m_eff)
        bound = self.residual_tolerance * max(abs(omega), params.omega_b)
        if residual > bound:
            raise ConsistencyError(
                f"Fixed point residual {residual:.3g} exceeds {bound:.3g}"
            )

        phase = -cmath.phase(epsilon) if g0 != 0 and epsilon != 0 else 0.0
        rotation = cmath.exp(1j * phase)
        return ClassicalFixedPoint(
            alpha=alpha * rotation,
            epsilon=epsilon * rotation,
            beta=beta,
            delta_m_eff=delta_m_eff,
            G_bm=abs(g0 * epsilon),
            phase=phase,
            branch_count=branch_count,
            residual=residual,
        )

    @staticmethod
    def _residual(params, omega, alpha, epsilon, beta, delta_m_eff) -> float:
        g0 = params.g_bm_single or 0.0
        d_alpha = (-1j * params.delta_c - params.kappa_a / 2.0) * alpha - 1j * params.g_am * epsilon
        d_epsilon = (
            (-1j * delta_m_eff - params.kappa_m / 2.0) * epsilon
            - 1j * params.g_am * alpha
            + omega
        )
        d_beta = (
            (-1j * params.omega_b - params.gamma_b / 2.0) * beta
            - 1j * g0 * abs(epsilon) ** 2
        )
        return max(abs(d_alpha), abs(d_epsilon), abs(d_beta))
