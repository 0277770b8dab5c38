import logging
import math
from itertools import permutations
from typing import Optional, Dict, Any, Tuple

import numpy as np

from ..errors import DomainError, PhysicalityError
from ..models.entanglement import (
    ModePair, ReducedCovariance, BogoliubovAnalysis, EntanglementReport
)
from ..models.params import QUADRATURES

logger = logging.getLogger(__name__)


class EntanglementService:
    """Bipartite entanglement of the steady state and its Bogoliubov picture.

    Second moments are read off the symmetrized covariance (vacuum diagonal
    1/2) using x = (a + a^+)/sqrt 2, y = (a - a^+)/(i sqrt 2):

        <a^+ a>          = (sigma_x1x1 + sigma_y1y1 - 1) / 2
        <a b + a^+ b^+>  = sigma_x1q - sigma_y1p

    since x1 q - y1 p = a b + a^+ b^+ for commuting modes a and b.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        config = config or {}
        self.physicality_tolerance = float(config.get("physicality_tolerance", 1e-9))
        self.radicand_tolerance = float(config.get("radicand_tolerance", 1e-12))
        self.separability_tolerance = float(config.get("separability_tolerance", 1e-12))

    # Uncertainty principle

    def symplectic_eigenvalues(self, sigma: np.ndarray) -> np.ndarray:
        """Symplectic eigenvalues of sigma, ascending."""
        sigma = np.asarray(sigma, dtype=float)
        J = QUADRATURES.symplectic_form(sigma.shape[0] // 2)
        moduli = np.sort(np.abs(np.linalg.eigvals(1j * J @ sigma)))
        return moduli[::2]

    def physicality_check(self, sigma: np.ndarray) -> Tuple[bool, float]:
        """True when every symplectic eigenvalue is at least 1/2."""
        smallest = float(self.symplectic_eigenvalues(sigma)[0])
        bound = QUADRATURES.vacuum_diagonal - self.physicality_tolerance
        return smallest >= bound, smallest

    # Two-mode reductions

    def reduce_covariance(self, sigma: np.ndarray, pair: ModePair) -> ReducedCovariance:
        """Keep the rows and columns of the two modes of ``pair``."""
        pair = ModePair(pair)
        index = list(pair.indices)
        return ReducedCovariance(sigma_prime=np.asarray(sigma)[np.ix_(index, index)].copy(), pair=pair)

    def log_negativity(self, rc: ReducedCovariance) -> Tuple[float, float]:
        """Logarithmic negativity and the smallest partially transposed symplectic eigenvalue."""
        det_sigma = float(np.linalg.det(rc.sigma_prime))
        if det_sigma <= 0:
            raise PhysicalityError(f"det sigma' = {det_sigma:.3g} <= 0 for pair {rc.pair.value}")

        sigma_sum = float(np.linalg.det(rc.R1) + np.linalg.det(rc.R2) - 2.0 * np.linalg.det(rc.R3))
        radicand = sigma_sum * sigma_sum - 4.0 * det_sigma
        if radicand < -self.radicand_tolerance * max(1.0, sigma_sum * sigma_sum):
            raise PhysicalityError(
                f"Negative radicand {radicand:.3g} in eta for pair {rc.pair.value}"
            )
        root = math.sqrt(max(radicand, 0.0))
        if sigma_sum + root <= 0:
            raise PhysicalityError(f"Sigma = {sigma_sum:.3g} <= 0 for pair {rc.pair.value}")

        # Sigma - sqrt(Sigma^2 - 4 det) written without cancellation
        eta = math.sqrt(2.0 * det_sigma / (sigma_sum + root))

        if eta >= QUADRATURES.vacuum_diagonal - self.separability_tolerance:
            return 0.0, eta
        return max(0.0, -math.log(2.0 * eta)), eta

    def partial_transpose_eta(self, rc: ReducedCovariance) -> float:
        """Smallest symplectic eigenvalue of the partial transpose, computed numerically."""
        flip = np.diag([1.0, 1.0, 1.0, -1.0])
        return float(self.symplectic_eigenvalues(flip @ rc.sigma_prime @ flip)[0])

    def two_mode_squeezed_covariance(self, r: float, nbar: float = 0.0) -> np.ndarray:
        """Covariance of a (thermal) two-mode squeezed state with squeezing r."""
        c, s = math.cosh(2.0 * r), math.sinh(2.0 * r)
        Z = np.diag([1.0, -1.0])
        block = np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])
        return (2.0 * nbar + 1.0) * QUADRATURES.vacuum_diagonal * block

    # Transfer of entanglement between pairs

    def transfer_coefficient(self, E_source: float, E_target: float) -> Optional[float]:
        """E_target / E_source; inf when only the source vanishes, None when both do."""
        if E_source < 0 or E_target < 0:
            raise DomainError(
                f"Entanglement values must be >= 0 (got {E_source}, {E_target})"
            )
        if E_source == 0:
            return math.inf if E_target > 0 else None
        return E_target / E_source

    def transfer_matrix(self, values: Dict[str, float]) -> Dict[str, Optional[float]]:
        """T(X -> Y) for every ordered pair of distinct mode pairs."""
        return {
            f"T_{source}_to_{target}": self.transfer_coefficient(
                values[f"E_{source}"], values[f"E_{target}"]
            )
            for source, target in permutations([pair.value for pair in ModePair], 2)
        }

    # Bogoliubov modes

    def squeeze_parameter(self, G_bm: float, g_am: float) -> BogoliubovAnalysis:
        """r = artanh(G_bm/g_am) and the beam-splitter rate G = sqrt(g_am^2 - G_bm^2)."""
        if not g_am > 0:
            raise DomainError(f"g_am must be > 0 (got {g_am})")
        if abs(G_bm) >= g_am:
            raise DomainError(
                f"|G_bm| = {abs(G_bm):g} >= g_am = {g_am:g}: outside the reservoir-engineering regime"
            )
        return BogoliubovAnalysis(
            r=math.atanh(G_bm / g_am),
            G_eff=math.sqrt(g_am * g_am - G_bm * G_bm),
        )

    def mode_occupancies(self, sigma: np.ndarray) -> Dict[str, float]:
        """Fluctuation occupancies <a^+a>, <m^+m>, <b^+b>."""
        occupancies = {}
        for mode in ("a", "m", "b"):
            block = QUADRATURES.mode_slice(mode)
            trace = sigma[block, block].trace()
            occupancies[f"n_{mode}"] = float((trace - 2.0 * QUADRATURES.vacuum_diagonal) / 2.0)
        return occupancies

    def bogoliubov_occupancies(self, sigma: np.ndarray, r: float) -> Tuple[float, float]:
        """Occupancies of beta_1 = a cosh r + b^+ sinh r and beta_2 = b cosh r + a^+ sinh r."""
        if not math.isfinite(r):
            raise DomainError(f"r must be finite (got {r})")
        occupancies = self.mode_occupancies(sigma)
        n_a, n_b = occupancies["n_a"], occupancies["n_b"]
        for name, value in (("n_a", n_a), ("n_b", n_b)):
            if value < -self.physicality_tolerance:
                raise PhysicalityError(f"Negative occupancy {name} = {value:.3g}")

        pair_moment = float(sigma[0, 4] - sigma[1, 5])
        c2, s2 = math.cosh(r) ** 2, math.sinh(r) ** 2
        cs = math.sinh(r) * math.cosh(r)
        n_beta1 = c2 * n_a + s2 * n_b + s2 + cs * pair_moment
        n_beta2 = c2 * n_b + s2 * n_a + s2 + cs * pair_moment
        return n_beta1, n_beta2

    # Everything at once

    def report(self, sigma: np.ndarray, G_bm: float, g_am: float) -> EntanglementReport:
        """Entanglement report of one steady state."""
        values: Dict[str, float] = {}
        for pair in ModePair:
            E, eta = self.log_negativity(self.reduce_covariance(sigma, pair))
            values[f"E_{pair.value}"] = E
            values[f"eta_{pair.value}"] = eta

        r = G_eff = n_beta1 = n_beta2 = None
        if g_am > 0 and abs(G_bm) < g_am:
            analysis = self.squeeze_parameter(G_bm, g_am)
            r, G_eff = analysis.r, analysis.G_eff
            n_beta1, n_beta2 = self.bogoliubov_occupancies(sigma, r)

        return EntanglementReport(
            E_ab=values["E_ab"],
            E_am=values["E_am"],
            E_mb=values["E_mb"],
            eta_ab=values["eta_ab"],
            eta_am=values["eta_am"],
            eta_mb=values["eta_mb"],
            T_mb_to_ab=self.transfer_coefficient(values["E_mb"], values["E_ab"]),
            r=r,
            G_eff=G_eff,
            n_beta1=n_beta1,
            n_beta2=n_beta2,
            occupancies=self.mode_occupancies(sigma),
        )
