"""
Gate matrices and channel operations.
"""
from modules.channels.tools.gates import (
    su4_matrix,
    bloch_pure_state,
    su4_segments,
    euler_zyz,
    entangling_core,
    bloch_ket,
    bloch_projector,
)
from modules.channels.tools.channels import (
    apply_local_unitary,
    reset_channel,
    dephasing_channel,
    amplitude_damping_channel,
    depolarizing_channel,
    apply_su4_noisy,
    check_ring_pair,
    dephasing_kraus,
    amplitude_damping_kraus,
    reset_superop,
    cx_noise_superop,
    su4_superop,
)

__all__ = [
    "su4_matrix",
    "bloch_pure_state",
    "su4_segments",
    "euler_zyz",
    "entangling_core",
    "bloch_ket",
    "bloch_projector",
    "apply_local_unitary",
    "reset_channel",
    "dephasing_channel",
    "amplitude_damping_channel",
    "depolarizing_channel",
    "apply_su4_noisy",
    "check_ring_pair",
    "dephasing_kraus",
    "amplitude_damping_kraus",
    "reset_superop",
    "cx_noise_superop",
    "su4_superop",
]
