import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Dict, Any, Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import ParameterError, SimulationError, SweepError
from ..models.params import SystemParams, DriveParams
from ..models.sweep import SweepSpec, SweepRow
from .audit_service import AuditService
from .dynamics_service import DynamicsService
from .entanglement_service import EntanglementService
from .fixed_point_service import FixedPointService
from .lyapunov_service import LyapunovService
from .model_service import ModelService

logger = logging.getLogger(__name__)

# Parameters that are functions of others; applied after plain fields.
_DERIVED = {"G_bm_over_g_am", "kappa_ratio", "Q", "temperature_K"}


class PointEvaluator:
    """Full pipeline for one parameter point: drift/diffusion, stability, Lyapunov, metrics."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.model_service = ModelService(self.config)
        self.fixed_point_service = FixedPointService(self.config)
        self.dynamics_service = DynamicsService(self.config)
        self.lyapunov_service = LyapunovService(config=self.config)
        self.entanglement_service = EntanglementService(self.config)

    def coupling(self, params: SystemParams, drive: Optional[DriveParams]) -> Tuple[SystemParams, float, Optional[int]]:
        """Enhanced coupling and effective detuning, from input or from the classical solve."""
        if params.G_bm is not None:
            return params, params.G_bm, None

        if params.g_bm_single is None or drive is None:
            raise ParameterError({
                "G_bm": "set G_bm directly, or give g_bm_single together with a [drive] block"
            })

        omega = self.model_service.drive_in_units(self.model_service.rabi_from_drive(drive), params)
        branches = self.fixed_point_service.solve_fixed_point(params, omega)
        lowest = branches[0]
        self.fixed_point_service.low_excitation_check(lowest, drive)
        return params.with_updates(delta_m=lowest.delta_m_eff), lowest.G_bm, lowest.branch_count

    def evaluate(
        self,
        params: SystemParams,
        drive: Optional[DriveParams] = None,
        dump_prefix: Optional[Path] = None,
    ) -> Dict[str, Any]:
        """Outputs of one point; unstable points come back with no values."""
        params = self.model_service.prepare(params)
        params, G_bm, branch_count = self.coupling(params, drive)

        system = self.dynamics_service.drift_diffusion(params, G_bm)
        if dump_prefix is not None:
            self.dynamics_service.dump_matrices(system.A, system.D, dump_prefix)

        verdict = self.dynamics_service.is_stable(system.A)
        result: Dict[str, Any] = {
            "stable": verdict.stable,
            "max_real_part": verdict.max_real_part,
            "branch_count": branch_count,
            "values": {},
        }
        if not verdict.stable:
            return result

        steady = self.lyapunov_service.solve_lyapunov(system.A, system.D)
        report = self.entanglement_service.report(steady.sigma, G_bm, params.g_am)
        result["values"] = report.as_dict()
        result["sigma"] = steady.sigma
        result["physical"] = steady.physical
        result["residual"] = steady.residual_norm
        return result


_worker_evaluator: Optional[PointEvaluator] = None


def _evaluate_task(task: Tuple[Dict[str, Any], SystemParams, Optional[DriveParams], Optional[Path]]) -> Dict[str, Any]:
    global _worker_evaluator
    config, params, drive, dump_prefix = task
    if _worker_evaluator is None or _worker_evaluator.config != config:
        _worker_evaluator = PointEvaluator(config)
    result = _worker_evaluator.evaluate(params, drive, dump_prefix)
    result.pop("sigma", None)
    return result


class SweepService:
    """1-D and 2-D parameter sweeps over the steady-state pipeline."""

    def __init__(self, config: Optional[Dict[str, Any]] = None, jobs: int = 1):
        self.config = config or {}
        self.jobs = max(1, int(jobs))
        self.evaluator = PointEvaluator(self.config)
        self.audit_service = AuditService()

    def resolve_point(
        self, spec: SweepSpec, base: SystemParams, coordinates: Dict[str, float]
    ) -> SystemParams:
        """Apply overrides, axis values and ties to the base parameters."""
        assignments: Dict[str, float] = dict(spec.overrides)
        assignments.update(coordinates)

        plain = {k: v for k, v in assignments.items() if k not in _DERIVED}
        derived = {k: v for k, v in assignments.items() if k in _DERIVED}
        try:
            params = base.with_updates(**plain) if plain else base
        except ValueError as e:
            raise ParameterError({"overrides": str(e)})

        updates: Dict[str, float] = {}
        if "kappa_ratio" in derived:
            updates["kappa_a"] = params.kappa_m / derived["kappa_ratio"]
        if "Q" in derived:
            updates["gamma_b"] = params.omega_b / derived["Q"]
        if "G_bm_over_g_am" in derived:
            updates["G_bm"] = derived["G_bm_over_g_am"] * params.g_am
        if updates:
            params = params.with_updates(**updates)

        if spec.ties:
            params = params.with_updates(**{
                target: getattr(params, source) for target, source in spec.ties.items()
            })

        if "temperature_K" in derived:
            params = params.thermalized(derived["temperature_K"])
        return params

    def grid(self, spec: SweepSpec) -> List[Dict[str, float]]:
        """Row-major list of grid coordinates."""
        axes = [(r.axis.value, r.grid()) for r in spec.ranges]
        names = [name for name, _ in axes]
        return [
            dict(zip(names, (float(v) for v in values)))
            for values in itertools.product(*(values for _, values in axes))
        ]

    def run_sweep(
        self,
        spec: SweepSpec,
        base: SystemParams,
        drive: Optional[DriveParams] = None,
        dump_dir: Optional[Path] = None,
    ) -> List[SweepRow]:
        """Evaluate every grid point; rows come back in grid order."""
        self._check_ties(spec)
        started = time.perf_counter()
        coordinates = self.grid(spec)
        logger.info(
            f"Sweep over {' x '.join(r.axis.value for r in spec.ranges)}: {len(coordinates)} points"
        )

        tasks = []
        for index, point in enumerate(coordinates):
            params = self.resolve_point(spec, base, point)
            prefix = Path(dump_dir) / f"point_{index:05d}" if dump_dir is not None else None
            tasks.append((self.config, params, drive, prefix))

        try:
            results = self._evaluate_all(tasks)
        except SimulationError as e:
            logger.error(f"Sweep failed: {e}")
            self.audit_service.log_sweep_action("SWEEP_FAILED", spec.axis.value, {"error": str(e)})
            raise

        rows = [
            SweepRow(
                coordinates=point,
                values=result["values"],
                stable=result["stable"],
                branch_count=result["branch_count"],
                max_real_part=result["max_real_part"],
            )
            for point, result in zip(coordinates, results)
        ]

        unstable = sum(1 for row in rows if not row.stable)
        if unstable == len(rows):
            worst = max(row.max_real_part for row in rows)
            message = f"All {len(rows)} sweep points are unstable (largest max Re(lambda) = {worst:.3g})"
            self.audit_service.log_sweep_action("SWEEP_FAILED", spec.axis.value, {"error": message})
            raise SweepError(message)

        elapsed = time.perf_counter() - started
        logger.info(f"Sweep finished in {elapsed:.2f}s ({unstable} unstable points)")
        self.audit_service.log_sweep_action(
            "SWEEP_COMPLETED",
            spec.axis.value,
            {
                "points": len(rows),
                "unstable": unstable,
                "seconds": round(elapsed, 3),
            },
        )
        return rows

    def death_temperature(
        self,
        base: SystemParams,
        T_min: float = 0.01,
        T_max: float = 3.0,
        points: int = 61,
    ) -> Optional[float]:
        """Lowest temperature at which the photon-phonon entanglement vanishes."""
        temperatures = np.geomspace(T_min, T_max, points)
        previous = None
        for T in temperatures:
            eta = self._eta_ab(base, float(T))
            if eta >= 0.5:
                if previous is None:
                    logger.info(f"No photon-phonon entanglement already at T = {T_min} K")
                    return None
                return float(brentq(lambda t: self._eta_ab(base, t) - 0.5, previous, float(T), xtol=1e-6))
            previous = float(T)

        logger.info(f"Photon-phonon entanglement survives up to T = {T_max} K")
        return None

    def _eta_ab(self, base: SystemParams, temperature_K: float) -> float:
        result = self.evaluator.evaluate(base.thermalized(temperature_K))
        if not result["stable"]:
            # No steady state means no steady-state entanglement
            logger.warning(
                f"Unstable steady state at T = {temperature_K:.4g} K "
                f"(max Re(lambda) = {result['max_real_part']:.3g}); counted as separable"
            )
            return math.inf
        return result["values"]["eta_ab"]

    def _evaluate_all(self, tasks: List[Tuple]) -> List[Dict[str, Any]]:
        if self.jobs == 1 or len(tasks) < 2:
            results = []
            for config, params, drive, prefix in tasks:
                result = self.evaluator.evaluate(params, drive, prefix)
                result.pop("sigma", None)
                results.append(result)
                logger.debug(f"Point done: stable={result['stable']}")
            return results

        chunksize = max(1, math.ceil(len(tasks) / (4 * self.jobs)))
        with ProcessPoolExecutor(max_workers=self.jobs) as executor:
            return list(executor.map(_evaluate_task, tasks, chunksize=chunksize))

    @staticmethod
    def _check_ties(spec: SweepSpec) -> None:
        errors = {}
        fields = set(SystemParams.model_fields)
        for target, source in spec.ties.items():
            if target not in fields:
                errors[f"ties.{target}"] = "not a parameter"
            if source not in fields:
                errors[f"ties.{target}"] = f"source {source} is not a parameter"
        for name in spec.overrides:
            if name not in fields and name not in _DERIVED:
                errors[f"overrides.{name}"] = "not a parameter"
        if errors:
            raise ParameterError(errors)
