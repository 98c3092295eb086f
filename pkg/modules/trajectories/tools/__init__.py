"""
Trajectory sampling tools.
"""
from modules.trajectories.tools.sampling import (
    compile_circuit,
    enumerate_branches,
    estimate_density,
    sample_trajectory,
    trajectory_rng,
)

__all__ = [
    "compile_circuit",
    "enumerate_branches",
    "estimate_density",
    "sample_trajectory",
    "trajectory_rng",
]
