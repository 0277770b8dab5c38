import json
import logging
import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Dict, Any

import yaml
from pydantic import ValidationError

from ..errors import ConfigError, ParameterError
from ..models.params import SystemParams, DriveParams
from ..models.sweep import SweepSpec

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path("config/config.yaml")

_TWO_PI = 2.0 * math.pi

# Laboratory operating point, SI units (rad/s)
PRESETS: Dict[str, Dict[str, Any]] = {
    "experimental": {
        "units": "SI",
        "omega_c": _TWO_PI * 10.0e9,
        "omega_m": _TWO_PI * 10.0e9,
        "omega_b": _TWO_PI * 10.0e6,
        "delta_c": -_TWO_PI * 10.0e6,
        "delta_m": -_TWO_PI * 10.0e6,
        "g_am": _TWO_PI * 3.2e6,
        "G_bm": _TWO_PI * 3.2e6,
        "kappa_a": _TWO_PI * 1.0e6,
        "kappa_m": _TWO_PI * 1.0e6,
        "gamma_b": _TWO_PI * 100.0,
        "temperature_K": 0.01,
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Contents of one run configuration file."""
    system: SystemParams
    sweep: SweepSpec
    drive: Optional[DriveParams] = None
    source: Optional[Path] = None


class ConfigService:
    """Reads the application settings and run configuration files."""

    def load_app_config(self, path: Optional[Path] = None) -> Dict[str, Any]:
        """Application settings from config/config.yaml."""
        config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                config = yaml.safe_load(f) or {}
        except FileNotFoundError:
            raise ConfigError(f"Configuration file not found: {config_path}")
        except yaml.YAMLError as e:
            raise ConfigError(f"Error parsing configuration file {config_path}: {e}")

        if not isinstance(config, dict):
            raise ConfigError(f"{config_path} must contain a mapping")
        return config

    @staticmethod
    def numerics(config: Dict[str, Any]) -> Dict[str, Any]:
        return dict(config.get("numerics") or {})

    def load_run_config(self, path: Path) -> RunConfig:
        """Parse a TOML, JSON or YAML run file with [system], [drive] and [sweep] sections."""
        path = Path(path)
        data = self._read(path)

        unknown = sorted(set(data) - {"system", "drive", "sweep"})
        if unknown:
            raise ConfigError(f"{path}: unknown section(s) {', '.join(unknown)}")
        for section in ("system", "sweep"):
            if section not in data:
                raise ConfigError(f"{path}: missing [{section}] section")

        system = self.build_system(data["system"])
        drive = self._build(DriveParams, data["drive"], "drive") if "drive" in data else None
        sweep = self._build(SweepSpec, data["sweep"], "sweep")

        logger.info(f"Loaded run configuration {path} (units={system.units.value}, axis={sweep.axis.value})")
        return RunConfig(system=system, sweep=sweep, drive=drive, source=path)

    def build_system(self, section: Dict[str, Any]) -> SystemParams:
        """SystemParams from a [system] mapping; accepts a preset name and the G_bm_direct alias."""
        values = dict(section)
        preset = values.pop("preset", None)
        if preset is not None:
            if preset not in PRESETS:
                raise ConfigError(f"Unknown preset '{preset}' (choose from {', '.join(PRESETS)})")
            values = {**PRESETS[preset], **values}

        if "G_bm_direct" in values:
            if "G_bm" in values:
                raise ParameterError({"G_bm_direct": "give either G_bm or G_bm_direct, not both"})
            values["G_bm"] = values.pop("G_bm_direct")

        return self._build(SystemParams, values, "system")

    def _read(self, path: Path) -> Dict[str, Any]:
        suffix = path.suffix.lower()
        try:
            if suffix == ".toml":
                with open(path, "rb") as f:
                    data = tomllib.load(f)
            elif suffix == ".json":
                with open(path, "r", encoding="utf-8") as f:
                    data = json.load(f)
            elif suffix in (".yaml", ".yml"):
                with open(path, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f) or {}
            else:
                raise ConfigError(f"Unsupported run configuration format '{suffix}' (use .toml, .json or .yaml)")
        except FileNotFoundError:
            raise ConfigError(f"Run configuration not found: {path}")
        except (tomllib.TOMLDecodeError, json.JSONDecodeError, yaml.YAMLError) as e:
            raise ConfigError(f"Cannot parse {path}: {e}")

        if not isinstance(data, dict):
            raise ConfigError(f"{path} must contain a mapping")
        return data

    @staticmethod
    def _build(model, values: Dict[str, Any], section: str):
        if not isinstance(values, dict):
            raise ConfigError(f"[{section}] must be a table")
        try:
            return model(**values)
        except ValidationError as e:
            raise ParameterError({
                ".".join([section] + [str(part) for part in error["loc"]]): error["msg"]
                for error in e.errors()
            })
