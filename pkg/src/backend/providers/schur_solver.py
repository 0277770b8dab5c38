import numpy as np
import scipy.linalg as spla

from ..errors import NumericalError
from .base import ILyapunovSolver


class SchurLyapunovSolver(ILyapunovSolver):
    """Bartels-Stewart solver from scipy, for larger mode counts."""

    def solve(self, A: np.ndarray, D: np.ndarray) -> np.ndarray:
        try:
            sigma = spla.solve_continuous_lyapunov(A, -np.asarray(D, dtype=float))
        except (np.linalg.LinAlgError, spla.LinAlgError, ValueError) as e:
            raise NumericalError(f"Schur Lyapunov solve failed: {e}")
        return 0.5 * (sigma + sigma.T)

    def get_solver_name(self) -> str:
        return "schur"
