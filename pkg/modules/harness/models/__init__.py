"""
Harness models.
"""
from modules.harness.models.harness import (
    CSV_COLUMNS,
    SCHEMA_VERSION,
    AuditResult,
    EmitPlotsRequest,
    ExperimentConfig,
    ModelSpec,
    RandomModel,
    ResultRecord,
    ResultRow,
    SweepAxes,
    TfiModel,
    XyModel,
)

__all__ = [
    "CSV_COLUMNS",
    "SCHEMA_VERSION",
    "AuditResult",
    "EmitPlotsRequest",
    "ExperimentConfig",
    "ModelSpec",
    "RandomModel",
    "ResultRecord",
    "ResultRow",
    "SweepAxes",
    "TfiModel",
    "XyModel",
]
