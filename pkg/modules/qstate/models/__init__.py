"""
State models.
"""
from modules.qstate.models.qstate import (
    DensityMatrix,
    PureState,
    qubits_for_dimension,
    EIGEN_FLOOR,
)

__all__ = [
    "DensityMatrix",
    "PureState",
    "qubits_for_dimension",
    "EIGEN_FLOOR",
]
