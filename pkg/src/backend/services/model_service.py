import logging
import math
from typing import Optional, Dict, Any

import numpy as np
from scipy import constants

from ..errors import DomainError, ParameterError
from ..models.params import (
    SystemParams, DriveParams, Units, SPIN_NUMBER
)

logger = logging.getLogger(__name__)

# Amplitude factor of the uniform-mode drive for spin s = 5/2
DRIVE_PREFACTOR = math.sqrt(5.0) / 4.0

_FREQUENCY_FIELDS = (
    "omega_b", "omega_c", "omega_m", "delta_c", "delta_m",
    "g_am", "g_bm_single", "G_bm", "kappa_a", "kappa_m", "gamma_b",
)


class ModelService:
    """Parameter validation, unit handling, bath occupancies and drive strength."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        config = config or {}
        self.occupancy_rtol = float(config.get("occupancy_rtol", 1e-6))

    def thermal_occupancy(self, omega: float, temperature_K: float) -> float:
        """Bose-Einstein occupation of a mode of angular frequency omega (rad/s)."""
        if not omega > 0:
            raise DomainError(f"omega must be > 0 (got {omega})")
        if temperature_K < 0:
            raise DomainError(f"temperature must be >= 0 (got {temperature_K})")
        if temperature_K == 0:
            return 0.0

        x = constants.hbar * omega / (constants.k * temperature_K)
        with np.errstate(over="ignore"):
            return float(1.0 / np.expm1(x))

    def rabi_from_drive(self, drive: DriveParams) -> float:
        """Drive rate Omega = (sqrt 5 / 4) gamma_y sqrt(rho V) B1 in rad/s."""
        self._check_drive(drive)
        return DRIVE_PREFACTOR * drive.gamma_y * math.sqrt(drive.spin_count) * drive.B1

    def drive_field_for_rabi(self, omega: float, drive: DriveParams) -> float:
        """Field amplitude B1 (T) that produces the drive rate omega (rad/s)."""
        self._check_drive(drive)
        return omega / (DRIVE_PREFACTOR * drive.gamma_y * math.sqrt(drive.spin_count))

    def drive_in_units(self, omega_si: float, params: SystemParams) -> float:
        """Express a drive rate given in rad/s in the internal units of params."""
        return omega_si / params.frequency_scale

    def validate(self, params: SystemParams) -> SystemParams:
        """Enforce all invariants and resolve occupancies from temperature."""
        errors: Dict[str, str] = {}

        for name in _FREQUENCY_FIELDS + ("nbar_a", "nbar_m", "nbar_b", "temperature_K"):
            value = getattr(params, name)
            if value is not None and not math.isfinite(value):
                errors[name] = "must be finite"

        for name in ("kappa_a", "kappa_m", "gamma_b", "omega_b", "omega_b_si"):
            if name not in errors and not getattr(params, name) > 0:
                errors[name] = f"must be > 0 (got {getattr(params, name)})"

        for name in ("nbar_a", "nbar_m", "nbar_b"):
            if name not in errors and getattr(params, name) < 0:
                errors[name] = f"must be >= 0 (got {getattr(params, name)})"

        if params.G_bm is not None and params.G_bm < 0 and "G_bm" not in errors:
            errors["G_bm"] = f"must be >= 0 (got {params.G_bm})"

        if params.temperature_K is not None and "temperature_K" not in errors:
            if params.temperature_K < 0:
                errors["temperature_K"] = f"must be >= 0 (got {params.temperature_K})"
            for name in ("omega_c", "omega_m"):
                value = getattr(params, name)
                if value is None:
                    errors[name] = "required when temperature_K is set"
                elif name not in errors and not value > 0:
                    errors[name] = f"must be > 0 (got {value})"

        if errors:
            raise ParameterError(errors)

        if params.temperature_K is None:
            return params

        resolved = self._occupancies_at(params, params.temperature_K)
        given_names = params.explicit_occupancies
        for name in given_names:
            given, value = getattr(params, name), resolved[name]
            if not math.isclose(given, value, rel_tol=self.occupancy_rtol, abs_tol=1e-12):
                errors[name] = (
                    f"{given} inconsistent with temperature_K={params.temperature_K} "
                    f"(expected {value:.6g})"
                )
        if errors:
            raise ParameterError(errors)

        missing = {name: value for name, value in resolved.items() if name not in given_names}
        return params.with_updates(**missing) if missing else params

    def to_dimensionless(self, params: SystemParams) -> SystemParams:
        """Rescale every frequency by omega_b so that omega_b = 1."""
        if params.units == Units.OMEGA_B and params.omega_b == 1.0:
            return params

        scale = params.omega_b
        updates: Dict[str, Any] = {
            name: getattr(params, name) / scale
            for name in _FREQUENCY_FIELDS
            if getattr(params, name) is not None
        }
        updates["omega_b_si"] = params.omega_b * params.frequency_scale
        updates["units"] = Units.OMEGA_B
        logger.debug(f"Rescaled parameters by omega_b = {scale:g} ({params.units.value})")
        return params.with_updates(**updates)

    def prepare(self, params: SystemParams) -> SystemParams:
        """Validate, then move to omega_b units."""
        return self.to_dimensionless(self.validate(params))

    def _occupancies_at(self, params: SystemParams, temperature_K: float) -> Dict[str, float]:
        scale = params.frequency_scale
        return {
            "nbar_a": self.thermal_occupancy(params.omega_c * scale, temperature_K),
            "nbar_m": self.thermal_occupancy(params.omega_m * scale, temperature_K),
            "nbar_b": self.thermal_occupancy(params.omega_b * scale, temperature_K),
        }

    @staticmethod
    def _check_drive(drive: DriveParams) -> None:
        errors: Dict[str, str] = {}
        if drive.B1 < 0:
            errors["B1"] = f"must be >= 0 (got {drive.B1})"
        if not drive.rho > 0:
            errors["rho"] = f"must be > 0 (got {drive.rho})"
        if not drive.V > 0:
            errors["V"] = f"must be > 0 (got {drive.V})"
        if errors:
            raise ParameterError(errors)

    @staticmethod
    def spin_capacity(drive: DriveParams) -> float:
        """2 N s, the scale that the magnon number must stay well below."""
        if not drive.spin_count > 0:
            raise DomainError(f"spin count must be > 0 (got {drive.spin_count})")
        return 2.0 * drive.spin_count * SPIN_NUMBER
