"""
Hamiltonian and Gibbs-state models.
"""
from modules.hamiltonians.models.hamiltonians import (
    GibbsTarget,
    HamiltonianDescriptor,
    RandomDescriptor,
    RingHamiltonian,
    TfiDescriptor,
    XyDescriptor,
)

__all__ = [
    "GibbsTarget",
    "HamiltonianDescriptor",
    "RandomDescriptor",
    "RingHamiltonian",
    "TfiDescriptor",
    "XyDescriptor",
]
