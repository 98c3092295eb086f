"""
Construction of ring Hamiltonians and thermal states.
"""
import logging

import numpy as np

from modules.channels.tools.gates import X, XX, YY, Z
from modules.hamiltonians.models.hamiltonians import (
    GibbsTarget,
    RandomDescriptor,
    RingHamiltonian,
    TfiDescriptor,
    XyDescriptor,
)
from modules.qstate.models.qstate import DensityMatrix
from modules.qstate.tools.state_ops import von_neumann_entropy
from modules.qstate.tools.tensor_ops import apply_left

logger = logging.getLogger(__name__)


def _check_ring(n: int) -> None:
    if n < 2:
        raise ValueError(f"ring needs at least 2 qubits, got n={n}")


def embed(op: np.ndarray, targets, n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a local operator on `targets`."""
    return apply_left(np.eye(2 ** n, dtype=np.complex128), np.asarray(op, dtype=np.complex128), list(targets), n)


def bond_sum(term: np.ndarray, n: int) -> np.ndarray:
    """Sum of a two-qubit term over all ring bonds (j, j+1 mod n)."""
    return sum(embed(term, (j, (j + 1) % n), n) for j in range(n))


def field_sum(op: np.ndarray, n: int) -> np.ndarray:
    return sum(embed(op, (j,), n) for j in range(n))


def shift_operator(n: int) -> np.ndarray:
    """Permutation matrix moving every qubit j to j + 1 mod n."""
    dim = 2 ** n
    weights = 1 << (n - 1 - np.arange(n))
    idx = np.arange(dim)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))) & 1
    shifted = np.roll(bits, 1, axis=1) @ weights
    perm = np.zeros((dim, dim), dtype=np.complex128)
    perm[shifted, idx] = 1.0
    return perm


def tfi_hamiltonian(n: int, h: float) -> RingHamiltonian:
    """H = -sum_j X_j X_{j+1} - h sum_j Z_j on a ring."""
    _check_ring(n)
    matrix = -bond_sum(np.kron(X, X), n) - h * field_sum(Z, n)
    return RingHamiltonian(n=n, matrix=matrix, descriptor=TfiDescriptor(h=h))


def xy_hamiltonian(n: int, gamma: float, h: float) -> RingHamiltonian:
    """H = -sum_j [(1+gamma)/2 XX + (1-gamma)/2 YY] - h sum_j Z_j on a ring."""
    _check_ring(n)
    term = 0.5 * (1.0 + gamma) * XX + 0.5 * (1.0 - gamma) * YY
    matrix = -bond_sum(term, n) - h * field_sum(Z, n)
    return RingHamiltonian(n=n, matrix=matrix, descriptor=XyDescriptor(gamma=gamma, h=h))


def random_bond_term(seed: int) -> np.ndarray:
    """Hermitized complex Gaussian 4x4 matrix scaled to unit spectral norm."""
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    term = 0.5 * (a + a.conj().T)
    return term / np.linalg.norm(term, ord=2)


def random_two_local_ti(n: int, seed: int) -> RingHamiltonian:
    """
    Translation-invariant Hamiltonian built from one random bond term.

    Args:
        n: Ring size, >= 2
        seed: Seed for the bond term

    Returns:
        RingHamiltonian with the same term on every bond
    """
    _check_ring(n)
    matrix = bond_sum(random_bond_term(seed), n)
    return RingHamiltonian(n=n, matrix=matrix, descriptor=RandomDescriptor(seed=seed))


def thermal_density(matrix: np.ndarray, beta: float) -> np.ndarray:
    """exp(-beta H) / Z via eigendecomposition, shifted by the ground energy."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    energies, vecs = np.linalg.eigh(np.asarray(matrix, dtype=np.complex128))
    weights = np.exp(-beta * (energies - energies.min()))
    weights /= weights.sum()
    rho = (vecs * weights) @ vecs.conj().T
    return 0.5 * (rho + rho.conj().T)


def gibbs_state(ham: RingHamiltonian, beta: float) -> GibbsTarget:
    state = DensityMatrix.from_array(thermal_density(ham.matrix, beta))
    logger.debug(f"Gibbs state for {ham.descriptor.label} at beta={beta}: purity {state.purity():.6f}")
    return GibbsTarget(beta=beta, state=state, hamiltonian=ham)


def free_energy(rho: DensityMatrix, ham: RingHamiltonian, beta: float) -> float:
    """Tr(H rho) - S(rho) / beta, minimized by the Gibbs state."""
    if beta <= 0:
        raise ValueError(f"free energy needs beta > 0, got {beta}")
    if rho.n_qubits != ham.n:
        raise ValueError(f"state has {rho.n_qubits} qubits, Hamiltonian has {ham.n}")
    energy = float(np.real(np.trace(ham.matrix @ rho.data)))
    return energy - von_neumann_entropy(rho) / beta
