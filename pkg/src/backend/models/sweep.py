from dataclasses import dataclass
from enum import Enum
from typing import Optional, Dict, List, Any

import numpy as np
from pydantic import BaseModel, Field, model_validator


class SweepAxis(str, Enum):
    DELTA_M = "delta_m"
    DELTA_C = "delta_c"
    G_BM = "G_bm"
    G_BM_OVER_G_AM = "G_bm_over_g_am"
    G_AM = "g_am"
    KAPPA_A = "kappa_a"
    KAPPA_M = "kappa_m"
    GAMMA_B = "gamma_b"
    KAPPA_RATIO = "kappa_ratio"
    TEMPERATURE_K = "temperature_K"
    NBAR_B = "nbar_b"
    Q = "Q"


class Scale(str, Enum):
    LINEAR = "linear"
    LOG = "log"


# Keys a sweep may request; "eta" expands to the three pair values.
OUTPUT_KEYS = (
    "E_ab", "E_am", "E_mb", "T", "n_beta1", "n_beta2", "stability",
    "eta", "eta_ab", "eta_am", "eta_mb",
    "n_a", "n_m", "n_b", "r", "G_eff", "max_real_part",
)
DEFAULT_OUTPUTS = ["E_ab", "E_am", "E_mb", "T", "stability"]


def _check_grid(low: float, high: float, points: int, scale: Scale) -> None:
    if points < 2:
        raise ValueError(f"points must be >= 2 (got {points})")
    if not low < high:
        raise ValueError(f"min must be < max (got {low} >= {high})")
    if scale == Scale.LOG and low <= 0:
        raise ValueError("log scale needs min > 0")


class AxisRange(BaseModel):
    """One swept parameter and its grid."""

    axis: SweepAxis
    min: float
    max: float
    points: int = Field(default=201)
    scale: Scale = Field(default=Scale.LINEAR)

    model_config = {"frozen": True, "extra": "forbid"}

    @model_validator(mode="after")
    def _check(self) -> "AxisRange":
        _check_grid(self.min, self.max, self.points, self.scale)
        return self

    def grid(self) -> np.ndarray:
        if self.scale == Scale.LOG:
            return np.geomspace(self.min, self.max, self.points)
        return np.linspace(self.min, self.max, self.points)


class SweepSpec(BaseModel):
    """A 1-D sweep, or a 2-D sweep when ``axis2`` is set (row-major)."""

    axis: SweepAxis
    min: float
    max: float
    points: int = Field(default=201)
    scale: Scale = Field(default=Scale.LINEAR)
    axis2: Optional[AxisRange] = Field(default=None)
    overrides: Dict[str, float] = Field(default_factory=dict)
    ties: Dict[str, str] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=lambda: list(DEFAULT_OUTPUTS))

    model_config = {
        "frozen": True,
        "extra": "forbid",
        "json_schema_extra": {
            "example": {
                "axis": "delta_m",
                "min": -2.0,
                "max": 0.0,
                "points": 201,
                "outputs": ["E_ab", "stability"],
            }
        },
    }

    @model_validator(mode="after")
    def _check_spec(self) -> "SweepSpec":
        _check_grid(self.min, self.max, self.points, self.scale)
        unknown = [key for key in self.outputs if key not in OUTPUT_KEYS]
        if unknown:
            raise ValueError(f"unknown outputs: {', '.join(unknown)}")
        if not self.outputs:
            raise ValueError("at least one output must be requested")
        if self.axis2 is not None and self.axis2.axis == self.axis:
            raise ValueError("axis2 must differ from axis")
        return self

    @property
    def primary(self) -> AxisRange:
        return AxisRange(
            axis=self.axis, min=self.min, max=self.max,
            points=self.points, scale=self.scale,
        )

    @property
    def ranges(self) -> List[AxisRange]:
        return [self.primary] + ([self.axis2] if self.axis2 is not None else [])

    @property
    def columns(self) -> List[str]:
        """Output columns with "eta" expanded, in request order."""
        columns: List[str] = []
        for key in self.outputs:
            expanded = ["eta_ab", "eta_am", "eta_mb"] if key == "eta" else [key]
            columns.extend(name for name in expanded if name not in columns)
        return columns


@dataclass
class SweepRow:
    """Result of one grid point."""
    coordinates: Dict[str, float]
    values: Dict[str, Optional[float]]
    stable: bool
    branch_count: Optional[int] = None
    max_real_part: Optional[float] = None

    def to_record(self, columns: List[str]) -> Dict[str, Any]:
        record: Dict[str, Any] = dict(self.coordinates)
        for column in columns:
            if column == "stability":
                record[column] = self.stable
            elif column == "max_real_part":
                record[column] = self.max_real_part
            else:
                record[column] = self.values.get(column) if self.stable else None
        if self.branch_count is not None:
            record["branch_count"] = self.branch_count
        return record
