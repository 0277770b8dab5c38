from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SteadyStateCovariance:
    """Solution of A sigma + sigma A^T = -D."""
    sigma: np.ndarray
    residual_norm: float
    physical: bool
    min_symplectic_eigenvalue: float
