"""
Layout and parameter models.
"""
from modules.ansatz.models.ansatz import (
    AnsatzLayout,
    ParameterVector,
    ResetSlot,
    Su4Slot,
    RESET_PARAM_COUNT,
)

__all__ = ["AnsatzLayout", "ParameterVector", "ResetSlot", "Su4Slot", "RESET_PARAM_COUNT"]
