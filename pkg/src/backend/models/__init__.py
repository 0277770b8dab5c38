from .params import (
    SystemParams, DriveParams, QuadratureConvention, QUADRATURES, Units, Interaction
)
from .fixed_point import ClassicalFixedPoint
from .dynamics import StabilityVerdict, DriftDiffusion
from .covariance import SteadyStateCovariance
from .entanglement import ModePair, ReducedCovariance, BogoliubovAnalysis, EntanglementReport
from .sweep import SweepAxis, Scale, AxisRange, SweepSpec, SweepRow
from .audit import RunAudit

__all__ = [
    "SystemParams",
    "DriveParams",
    "QuadratureConvention",
    "QUADRATURES",
    "Units",
    "Interaction",
    "ClassicalFixedPoint",
    "StabilityVerdict",
    "DriftDiffusion",
    "SteadyStateCovariance",
    "ModePair",
    "ReducedCovariance",
    "BogoliubovAnalysis",
    "EntanglementReport",
    "SweepAxis",
    "Scale",
    "AxisRange",
    "SweepSpec",
    "SweepRow",
    "RunAudit"
]
