from dataclasses import dataclass


@dataclass(frozen=True)
class ClassicalFixedPoint:
    """One classical steady state of the driven three-mode system.

    Amplitudes are dimensionless mode amplitudes. ``phase`` is the global
    rotation applied to alpha and epsilon so that G_bm is real and
    non-negative.
    """
    alpha: complex
    epsilon: complex
    beta: complex
    delta_m_eff: float
    G_bm: float
    phase: float
    branch_count: int
    residual: float

    @property
    def magnon_number(self) -> float:
        return abs(self.epsilon) ** 2
