"""
Hamiltonian construction and thermal states.
"""
from modules.hamiltonians.tools.hamiltonians import (
    tfi_hamiltonian,
    xy_hamiltonian,
    random_two_local_ti,
    random_bond_term,
    gibbs_state,
    thermal_density,
    free_energy,
    shift_operator,
    embed,
)

__all__ = [
    "tfi_hamiltonian",
    "xy_hamiltonian",
    "random_two_local_ti",
    "random_bond_term",
    "gibbs_state",
    "thermal_density",
    "free_energy",
    "shift_operator",
    "embed",
]
