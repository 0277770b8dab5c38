import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Dict, Any

import numpy as np
from pydantic import BaseModel, Field


# Reference scale of the dimensionless mode: omega_b / 2pi = 10 MHz
DEFAULT_OMEGA_B_SI = 2.0 * math.pi * 10.0e6
# Not stated alongside the drive formula; exposed as a parameter
DEFAULT_GAMMA_Y = 2.0 * math.pi * 28.0e9
DEFAULT_SPIN_DENSITY = 4.22e27
DEFAULT_SPHERE_DIAMETER = 250e-6
DEFAULT_SPHERE_VOLUME = math.pi * DEFAULT_SPHERE_DIAMETER ** 3 / 6.0
# Spin number of the Fe3+ ground state
SPIN_NUMBER = 2.5


class Units(str, Enum):
    OMEGA_B = "omega_b"
    SI = "SI"


class Interaction(str, Enum):
    """Form of the enhanced magnon-phonon coupling in the drift matrix.

    ``full`` keeps G_bm (m + m^dag)(b + b^dag); ``rwa`` keeps only the
    two-mode-squeezing part G_bm (m b + m^dag b^dag), the resonant term when
    delta_m = -omega_b.
    """

    FULL = "full"
    RWA = "rwa"


class SystemParams(BaseModel):
    """Frequencies, couplings, decay rates and bath state of the three modes.

    In ``omega_b`` units every frequency is a multiple of the mechanical
    frequency; ``omega_b_si`` (rad/s) is then only used to turn a bath
    temperature into occupancies. In ``SI`` units every frequency is in rad/s.
    ``delta_m`` is the effective magnon detuning when ``G_bm`` is given
    directly, and the bare detuning when the classical solve supplies G_bm.
    """

    units: Units = Field(default=Units.OMEGA_B)
    omega_b: float = Field(default=1.0)
    omega_c: Optional[float] = Field(default=None)
    omega_m: Optional[float] = Field(default=None)
    omega_b_si: float = Field(default=DEFAULT_OMEGA_B_SI)

    delta_c: float = Field(default=-1.0)
    delta_m: float = Field(default=-1.0)

    g_am: float = Field(default=0.0)
    g_bm_single: Optional[float] = Field(default=None)
    G_bm: Optional[float] = Field(default=None)
    interaction: Interaction = Field(default=Interaction.FULL)

    kappa_a: float
    kappa_m: float
    gamma_b: float

    nbar_a: float = Field(default=0.0)
    nbar_m: float = Field(default=0.0)
    nbar_b: float = Field(default=0.0)
    temperature_K: Optional[float] = Field(default=None)

    model_config = {
        "frozen": True,
        "extra": "forbid",
        "json_schema_extra": {
            "example": {
                "units": "omega_b",
                "delta_c": -1.0,
                "delta_m": -1.0,
                "g_am": 0.1,
                "G_bm": 0.035,
                "kappa_a": 0.1,
                "kappa_m": 0.1,
                "gamma_b": 0.01,
                "nbar_b": 0.2,
            }
        },
    }

    @property
    def quality_factor(self) -> float:
        return self.omega_b / self.gamma_b

    @property
    def explicit_occupancies(self) -> Tuple[str, ...]:
        """Occupancies given directly rather than defaulted."""
        return tuple(n for n in ("nbar_a", "nbar_m", "nbar_b") if n in self.model_fields_set)

    @property
    def frequency_scale(self) -> float:
        """Physical angular frequency (rad/s) of one internal frequency unit."""
        if self.units == Units.SI:
            return 1.0
        return self.omega_b_si / self.omega_b

    def with_updates(self, **updates: Any) -> "SystemParams":
        """Return a re-validated copy with some fields replaced."""
        data = self.model_dump(exclude_unset=True)
        data.update(updates)
        return SystemParams(**data)

    def thermalized(self, temperature_K: float) -> "SystemParams":
        """Copy whose three bath occupancies follow from one temperature."""
        data = self.model_dump(exclude_unset=True)
        for name in ("nbar_a", "nbar_m", "nbar_b"):
            data.pop(name, None)
        data["temperature_K"] = temperature_K
        return SystemParams(**data)


class DriveParams(BaseModel):
    """Microwave drive of the YIG sphere."""

    B1: float = Field(default=0.0)
    gamma_y: float = Field(default=DEFAULT_GAMMA_Y)
    rho: float = Field(default=DEFAULT_SPIN_DENSITY)
    V: float = Field(default=DEFAULT_SPHERE_VOLUME)
    omega_l: Optional[float] = Field(default=None)

    model_config = {
        "frozen": True,
        "extra": "forbid",
        "json_schema_extra": {
            "example": {
                "B1": 3.9e-5,
                "gamma_y": DEFAULT_GAMMA_Y,
                "rho": DEFAULT_SPIN_DENSITY,
                "V": DEFAULT_SPHERE_VOLUME,
            }
        },
    }

    @property
    def spin_count(self) -> float:
        return self.rho * self.V


@dataclass(frozen=True)
class QuadratureConvention:
    """Ordering and normalization of the fluctuation quadratures."""

    ordering: Tuple[str, ...] = ("x1", "y1", "x2", "y2", "q", "p")
    vacuum_diagonal: float = 0.5

    @property
    def n_modes(self) -> int:
        return len(self.ordering) // 2

    def mode_slice(self, mode: str) -> slice:
        start = {"a": 0, "m": 2, "b": 4}[mode]
        return slice(start, start + 2)

    def symplectic_form(self, n_modes: Optional[int] = None) -> np.ndarray:
        """Block-diagonal direct sum of [[0, 1], [-1, 0]]."""
        n = self.n_modes if n_modes is None else n_modes
        return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))

    def vacuum(self, n_modes: Optional[int] = None) -> np.ndarray:
        n = self.n_modes if n_modes is None else n_modes
        return self.vacuum_diagonal * np.eye(2 * n)

    def describe(self) -> Dict[str, Any]:
        return {"ordering": list(self.ordering), "vacuum_diagonal": self.vacuum_diagonal}


QUADRATURES = QuadratureConvention()
