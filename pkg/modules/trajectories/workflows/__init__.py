"""
Workflows for trajectory validation.
"""
from modules.trajectories.workflows.validation_workflow import TrajectoryValidationWorkflow, convergence_report

__all__ = ["TrajectoryValidationWorkflow", "convergence_report"]
