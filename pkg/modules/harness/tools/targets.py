"""
Hamiltonian instances named by an experiment's model block.
"""
from typing import List

from modules.harness.models.harness import ModelSpec, RandomModel, TfiModel
from modules.harness.tools.seeding import instance_seeds
from modules.hamiltonians.models.hamiltonians import (
    HamiltonianDescriptor,
    RandomDescriptor,
    RingHamiltonian,
    TfiDescriptor,
    XyDescriptor,
)
from modules.hamiltonians.tools.hamiltonians import random_two_local_ti, tfi_hamiltonian, xy_hamiltonian


def instance_descriptors(model: ModelSpec) -> List[HamiltonianDescriptor]:
    if isinstance(model, TfiModel):
        return [TfiDescriptor(h=model.h)]
    if isinstance(model, RandomModel):
        return [RandomDescriptor(seed=s) for s in instance_seeds(model.seed, model.count)]
    return [XyDescriptor(gamma=model.gamma, h=model.h)]


def build_hamiltonian(descriptor: HamiltonianDescriptor, n: int) -> RingHamiltonian:
    if isinstance(descriptor, TfiDescriptor):
        return tfi_hamiltonian(n, descriptor.h)
    if isinstance(descriptor, XyDescriptor):
        return xy_hamiltonian(n, descriptor.gamma, descriptor.h)
    return random_two_local_ti(n, descriptor.seed)
