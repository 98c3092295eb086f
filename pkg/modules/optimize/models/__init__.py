"""
Optimization models.
"""
from modules.optimize.models.optimize import (
    AdamSettings,
    AdamState,
    GradientScheme,
    LossContext,
    LossKind,
    OptimizerSettings,
    RunRecord,
    Termination,
)

__all__ = [
    "AdamSettings",
    "AdamState",
    "GradientScheme",
    "LossContext",
    "LossKind",
    "OptimizerSettings",
    "RunRecord",
    "Termination",
]
