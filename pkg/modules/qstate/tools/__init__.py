"""
State operations and array kernels.
"""
from modules.qstate.tools.state_ops import (
    kron,
    basis_state,
    maximally_mixed,
    clipped_eigh,
    psd_sqrt,
    fidelity_from_sqrts,
    partial_trace_qubit,
    uhlmann_fidelity,
    trace_distance,
    purity,
    von_neumann_entropy,
    relative_entropy,
)

__all__ = [
    "kron",
    "basis_state",
    "maximally_mixed",
    "clipped_eigh",
    "psd_sqrt",
    "fidelity_from_sqrts",
    "partial_trace_qubit",
    "uhlmann_fidelity",
    "trace_distance",
    "purity",
    "von_neumann_entropy",
    "relative_entropy",
]
