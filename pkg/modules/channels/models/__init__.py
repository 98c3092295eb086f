"""
Channel and gate parameter models.
"""
from modules.channels.models.channels import (
    BlochAngles,
    ResetGateParams,
    Su4Params,
    NoiseModel,
    SU4_ANGLE_COUNT,
    DEFAULT_P_STAR,
)

__all__ = [
    "BlochAngles",
    "ResetGateParams",
    "Su4Params",
    "NoiseModel",
    "SU4_ANGLE_COUNT",
    "DEFAULT_P_STAR",
]
