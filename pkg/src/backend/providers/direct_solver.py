import logging
from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.linalg as spla

from ..errors import NumericalError
from .base import ILyapunovSolver

logger = logging.getLogger(__name__)


@lru_cache(maxsize=8)
def _upper_indices(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows, cols = np.triu_indices(n)
    position = np.zeros((n, n), dtype=int)
    position[rows, cols] = np.arange(rows.size)
    position[cols, rows] = np.arange(rows.size)
    return rows, cols, position


class DirectLyapunovSolver(ILyapunovSolver):
    """Dense solve over the n(n+1)/2 independent entries of the symmetric unknown.

    Row (i, j), i <= j, of the linear system is the (i, j) entry of
    A sigma + sigma A^T, i.e. sum_k A_ik sigma_kj + A_jk sigma_ik.
    """

    def solve(self, A: np.ndarray, D: np.ndarray) -> np.ndarray:
        n = A.shape[0]
        rows, cols, position = _upper_indices(n)
        size = rows.size

        system = np.zeros((size, size))
        for row, (i, j) in enumerate(zip(rows, cols)):
            np.add.at(system[row], position[:, j], A[i])
            np.add.at(system[row], position[i, :], A[j])

        rhs = -np.asarray(D, dtype=float)[rows, cols]
        try:
            unknowns = spla.solve(system, rhs)
        except (np.linalg.LinAlgError, spla.LinAlgError) as e:
            raise NumericalError(f"Singular Lyapunov system ({size} unknowns): {e}")

        sigma = np.empty((n, n))
        sigma[rows, cols] = unknowns
        sigma[cols, rows] = unknowns
        return sigma

    def get_solver_name(self) -> str:
        return "direct"
