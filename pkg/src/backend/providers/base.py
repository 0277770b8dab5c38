from abc import ABC, abstractmethod

import numpy as np


class ILyapunovSolver(ABC):
    """Abstract interface for continuous Lyapunov solvers.

    Implementations return sigma with A sigma + sigma A^T = -D and must not
    check stability themselves; the caller does that once.
    """

    @abstractmethod
    def solve(self, A: np.ndarray, D: np.ndarray) -> np.ndarray:
        """Solve A sigma + sigma A^T = -D."""
        pass

    @abstractmethod
    def get_solver_name(self) -> str:
        """Get the name of this solver."""
        pass

    def refine(self, A: np.ndarray, D: np.ndarray, sigma: np.ndarray) -> np.ndarray:
        """One step of iterative refinement on an approximate solution."""
        residual = A @ sigma + sigma @ A.T + D
        correction = self.solve(A, residual)
        return sigma + correction
