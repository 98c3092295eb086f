"""
Trajectory models.
"""
from modules.trajectories.models.trajectories import (
    ConvergenceReport,
    TrajectoryRecord,
    TrajectoryValidationRequest,
)

__all__ = ["ConvergenceReport", "TrajectoryRecord", "TrajectoryValidationRequest"]
