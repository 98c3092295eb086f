"""
Workflows for experiment orchestration.
"""
from modules.harness.workflows.experiment_workflow import ExperimentWorkflow, expand_points

__all__ = ["ExperimentWorkflow", "expand_points"]
