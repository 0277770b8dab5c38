from .base import ILyapunovSolver
from .direct_solver import DirectLyapunovSolver
from .schur_solver import SchurLyapunovSolver

__all__ = [
    "ILyapunovSolver",
    "DirectLyapunovSolver",
    "SchurLyapunovSolver"
]
