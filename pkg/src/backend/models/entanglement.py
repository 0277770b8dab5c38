from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Dict

import numpy as np


class ModePair(str, Enum):
    AB = "ab"
    AM = "am"
    MB = "mb"

    @property
    def indices(self) -> Tuple[int, int, int, int]:
        """Rows/columns of the 6x6 covariance kept for this pair."""
        return {
            ModePair.AB: (0, 1, 4, 5),
            ModePair.AM: (0, 1, 2, 3),
            ModePair.MB: (2, 3, 4, 5),
        }[self]


@dataclass(frozen=True)
class ReducedCovariance:
    """Two-mode covariance [[R1, R3], [R3^T, R2]]."""
    sigma_prime: np.ndarray
    pair: ModePair

    @property
    def R1(self) -> np.ndarray:
        return self.sigma_prime[:2, :2]

    @property
    def R2(self) -> np.ndarray:
        return self.sigma_prime[2:, 2:]

    @property
    def R3(self) -> np.ndarray:
        return self.sigma_prime[:2, 2:]


@dataclass(frozen=True)
class BogoliubovAnalysis:
    """Squeezing parameter and effective coupling of the RWA picture."""
    r: float
    G_eff: float


@dataclass(frozen=True)
class EntanglementReport:
    """Pairwise entanglement and Bogoliubov-mode figures of one steady state.

    ``T_mb_to_ab`` is ``math.inf`` when E_mb vanishes while E_ab does not,
    and None when both vanish.
    """
    E_ab: float
    E_am: float
    E_mb: float
    eta_ab: float
    eta_am: float
    eta_mb: float
    T_mb_to_ab: Optional[float]
    r: Optional[float] = None
    G_eff: Optional[float] = None
    n_beta1: Optional[float] = None
    n_beta2: Optional[float] = None
    occupancies: Dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, Optional[float]]:
        values: Dict[str, Optional[float]] = {
            "E_ab": self.E_ab,
            "E_am": self.E_am,
            "E_mb": self.E_mb,
            "eta_ab": self.eta_ab,
            "eta_am": self.eta_am,
            "eta_mb": self.eta_mb,
            "T": self.T_mb_to_ab,
            "r": self.r,
            "G_eff": self.G_eff,
            "n_beta1": self.n_beta1,
            "n_beta2": self.n_beta2,
        }
        values.update(self.occupancies)
        return values
