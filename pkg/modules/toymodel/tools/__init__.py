"""
Toy-model tools.
"""
from modules.toymodel.tools.toy import (
    bloch_rotation,
    ideal_output_state,
    optimal_reset_probability,
    toy_output_state,
    toy_pipeline_via_channels,
    toy_table,
)

__all__ = [
    "bloch_rotation",
    "ideal_output_state",
    "optimal_reset_probability",
    "toy_output_state",
    "toy_pipeline_via_channels",
    "toy_table",
]
