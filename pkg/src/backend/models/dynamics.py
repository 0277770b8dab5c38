from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StabilityVerdict:
    """Eigenvalue-based stability of a drift matrix."""
    stable: bool
    eigenvalues: np.ndarray
    max_real_part: float

    def describe(self) -> str:
        state = "stable" if self.stable else "unstable"
        return f"{state} (max Re(lambda) = {self.max_real_part:.6g})"


@dataclass(frozen=True)
class DriftDiffusion:
    """Drift and diffusion matrices of one operating point, in quadrature order."""
    A: np.ndarray
    D: np.ndarray
