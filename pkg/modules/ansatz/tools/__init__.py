"""
Layout construction, parameter handling and circuit evolution.
"""
from modules.ansatz.tools.layout import (
    build_layout,
    init_parameters,
    parameter_bounds,
    project,
    ring_pairs,
    wrap_angles,
)
from modules.ansatz.tools.evolution import CircuitEvolver, evolve

__all__ = [
    "build_layout",
    "init_parameters",
    "parameter_bounds",
    "project",
    "ring_pairs",
    "wrap_angles",
    "CircuitEvolver",
    "evolve",
]
