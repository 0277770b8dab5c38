from .model_service import ModelService
from .fixed_point_service import FixedPointService
from .dynamics_service import DynamicsService
from .lyapunov_service import LyapunovService
from .entanglement_service import EntanglementService
from .sweep_service import SweepService, PointEvaluator
from .export_service import ExportService
from .figure_service import FigureService
from .config_service import ConfigService, RunConfig
from .check_service import CheckService
from .audit_service import AuditService

__all__ = [
    "ModelService",
    "FixedPointService",
    "DynamicsService",
    "LyapunovService",
    "EntanglementService",
    "SweepService",
    "PointEvaluator",
    "ExportService",
    "FigureService",
    "ConfigService",
    "RunConfig",
    "CheckService",
    "AuditService"
]
