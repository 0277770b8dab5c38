import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Dict, Any, Callable

from ..errors import UsageError
from ..models.params import SystemParams
from ..models.sweep import SweepSpec, SweepRow
from .audit_service import AuditService
from .export_service import ExportService
from .sweep_service import SweepService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FigureCurve:
    """One plotted curve: base parameters plus the sweep that traces it."""
    name: str
    base: SystemParams
    spec: SweepSpec
    label: str = ""


@dataclass
class FigureResult:
    figure_id: str
    datasets: Dict[str, List[SweepRow]] = field(default_factory=dict)
    columns: Dict[str, List[str]] = field(default_factory=dict)
    files: List[Path] = field(default_factory=list)
    death_temperatures: Dict[str, Optional[float]] = field(default_factory=dict)


# Weak-coupling baseline, all rates in units of omega_b
def baseline_params(**updates: Any) -> SystemParams:
    values = dict(
        delta_c=-1.0, delta_m=-1.0,
        g_am=0.1, G_bm=0.035,
        kappa_a=0.1, kappa_m=0.1, gamma_b=0.01,
        nbar_b=0.2,
    )
    values.update(updates)
    return SystemParams(**values)


# Reservoir-engineering regime, squeezing part of the magnon-phonon coupling only
def reservoir_params(**updates: Any) -> SystemParams:
    values = dict(
        delta_c=-1.0, delta_m=-1.0,
        g_am=0.65, G_bm=0.0, interaction="rwa",
        kappa_a=0.01, kappa_m=0.1, gamma_b=0.01,
        nbar_b=0.2,
    )
    values.update(updates)
    return SystemParams(**values)


def _fig2() -> List[FigureCurve]:
    spec = SweepSpec(axis="delta_m", min=-2.0, max=0.0, points=201, outputs=["E_ab", "stability"])
    return [
        FigureCurve("blue", baseline_params(), spec, "G_bm = 0.035, g_am = 0.1"),
        FigureCurve("red", baseline_params(g_am=0.0), spec, "g_am = 0"),
        FigureCurve("green", baseline_params(G_bm=0.0), spec, "G_bm = 0"),
    ]


def _fig3(outputs: List[str]) -> List[FigureCurve]:
    spec = SweepSpec(axis="G_bm", min=0.0005, max=0.0995, points=199, outputs=outputs)
    return [FigureCurve("coupling", baseline_params(), spec, "Delta_m = -1, g_am = 0.1")]


def _fig4() -> List[FigureCurve]:
    spec = SweepSpec(
        axis="G_bm_over_g_am", min=1e-3, max=0.999, points=201,
        outputs=["E_ab", "E_am", "E_mb", "T", "stability"],
    )
    return [FigureCurve("ratio", reservoir_params(), spec, "g_am = 0.65, kappa_m = 0.1")]


def _fig5(outputs: List[str], ratios: List[float]) -> List[FigureCurve]:
    curves = []
    for ratio in ratios:
        spec = SweepSpec(
            axis="kappa_ratio", min=1.0, max=100.0, points=201, scale="log",
            overrides={"G_bm_over_g_am": ratio},
            ties={"gamma_b": "kappa_a"},
            outputs=outputs,
        )
        curves.append(FigureCurve(f"ratio_{ratio:.2f}", reservoir_params(), spec, f"G_bm/g_am = {ratio}"))
    return curves


def _fig6() -> List[FigureCurve]:
    curves = []
    for kappa_m in (0.1, 0.9):
        for Q in (1e3, 1e4):
            # Bath occupancies come from the temperature axis
            base = SystemParams(
                delta_c=-1.0, delta_m=-1.0,
                g_am=0.65, G_bm=0.9 * 0.65, interaction="rwa",
                kappa_a=1.0 / Q, kappa_m=kappa_m, gamma_b=1.0 / Q,
                omega_c=1000.0, omega_m=1000.0,
            )
            spec = SweepSpec(
                axis="temperature_K", min=0.01, max=3.0, points=201, scale="log",
                overrides={"Q": Q},
                ties={"kappa_a": "gamma_b"},
                outputs=["E_ab", "eta", "stability"],
            )
            curves.append(FigureCurve(
                f"km{kappa_m:g}_Q{Q:.0e}".replace("+", ""), base, spec, f"kappa_m = {kappa_m}, Q = {Q:g}"
            ))
    return curves


FIGURES: Dict[str, Callable[[], List[FigureCurve]]] = {
    "fig2": _fig2,
    "fig3a": lambda: _fig3(["E_ab", "E_am", "E_mb", "stability"]),
    "fig3b": lambda: _fig3(["T", "E_ab", "E_mb", "stability"]),
    "fig4": _fig4,
    "fig5a": lambda: _fig5(["E_ab", "stability"], [0.98, 0.94, 0.90]),
    "fig5b": lambda: _fig5(["n_beta1", "n_beta2", "E_ab", "stability"], [0.98]),
    "fig6": _fig6,
}


class FigureService:
    """Reproduces the published figure datasets from built-in presets."""

    def __init__(
        self,
        sweep_service: Optional[SweepService] = None,
        export_service: Optional[ExportService] = None,
    ):
        self.sweep_service = sweep_service or SweepService()
        self.export_service = export_service or ExportService()
        self.audit_service = AuditService()

    def curves(self, figure_id: str) -> List[FigureCurve]:
        if figure_id not in FIGURES:
            raise UsageError(
                f"Unknown figure '{figure_id}' (choose from {', '.join(sorted(FIGURES))})"
            )
        return FIGURES[figure_id]()

    def reproduce_figure(
        self,
        figure_id: str,
        out_dir: Optional[Path] = None,
        fmt: str = "csv",
        dump_dir: Optional[Path] = None,
    ) -> FigureResult:
        """Run every curve of a figure; one dataset file per curve when out_dir is given."""
        curves = self.curves(figure_id)
        result = FigureResult(figure_id=figure_id)
        logger.info(f"Reproducing {figure_id}: {len(curves)} curve(s)")

        for curve in curves:
            logger.info(f"  {figure_id}/{curve.name}: {curve.label}")
            curve_dump = Path(dump_dir) / curve.name if dump_dir is not None else None
            rows = self.sweep_service.run_sweep(curve.spec, curve.base, dump_dir=curve_dump)
            result.datasets[curve.name] = rows
            result.columns[curve.name] = curve.spec.columns

            if out_dir is not None:
                path = Path(out_dir) / f"{figure_id}_{curve.name}.{fmt}"
                self.export_service.emit(rows, fmt, path, curve.spec.columns)
                result.files.append(path)

            if figure_id == "fig6":
                T_death = self.sweep_service.death_temperature(curve.base)
                result.death_temperatures[curve.name] = T_death
                if T_death is not None:
                    logger.info(f"  {curve.name}: entanglement death temperature {T_death:.3f} K")

        self.audit_service.log_figure_action(
            "FIGURE_REPRODUCED",
            figure_id,
            {
                "curves": list(result.datasets),
                "files": [str(path) for path in result.files],
                "death_temperatures": result.death_temperatures,
            },
        )
        return result
