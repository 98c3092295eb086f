"""
Operations on density matrices: composition, partial trace, spectral
functions and distance measures.
"""
from typing import Tuple

import numpy as np

from modules.qstate.models.qstate import EIGEN_FLOOR, DensityMatrix
from modules.qstate.tools.tensor_ops import partial_trace

HERMITIAN_INPUT_TOL = 1e-8
# eigenvalues below this fraction of the largest are treated as roundoff
ROUNDOFF_EIGEN = 64 * np.finfo(np.float64).eps


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product a (x) b; a occupies the more significant index bits."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def basis_state(n_qubits: int, index: int = 0) -> DensityMatrix:
    """Projector onto a computational basis state |index><index|."""
    dim = 2 ** n_qubits
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for {n_qubits} qubits")
    data = np.zeros((dim, dim), dtype=np.complex128)
    data[index, index] = 1.0
    return DensityMatrix.from_array(data, validate=False)


def maximally_mixed(n_qubits: int) -> DensityMatrix:
    dim = 2 ** n_qubits
    return DensityMatrix.from_array(np.eye(dim, dtype=np.complex128) / dim, validate=False)


def clipped_eigh(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian PSD matrix with floor clipping.

    Eigenvalues in [EIGEN_FLOOR, 0) are set to 0; anything lower raises.

    Args:
        a: Hermitian matrix

    Returns:
        Tuple of (eigenvalues, eigenvectors as columns)
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_INPUT_TOL:
        raise ValueError("matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    if w.min() < EIGEN_FLOOR:
        raise ValueError(f"eigenvalue {w.min():.3e} below floor {EIGEN_FLOOR}")
    return np.clip(w, 0.0, None), v


def psd_sqrt(a: np.ndarray) -> np.ndarray:
    """
    Principal square root of a Hermitian PSD matrix.

    Eigenvalues at roundoff level relative to the largest one are set to 0,
    so the root of a pure state is exactly rank one.
    """
    w, v = clipped_eigh(a)
    w[w <= ROUNDOFF_EIGEN * max(float(w[-1]), 0.0)] = 0.0
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity_from_sqrts(sqrt_a: np.ndarray, sqrt_b: np.ndarray) -> float:
    """F = ||sqrt_a sqrt_b||_*^2 (squared nuclear norm), clipped to [0, 1]."""
    value = float(np.linalg.norm(sqrt_a @ sqrt_b, ord="nuc")) ** 2
    return min(max(value, 0.0), 1.0)


def _check_same_dimension(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.data.shape != sigma.data.shape:
        raise ValueError(f"dimension mismatch: {rho.data.shape} vs {sigma.data.shape}")


def partial_trace_qubit(rho: DensityMatrix, i: int) -> DensityMatrix:
    """
    Trace out qubit i.

    Args:
        rho: n-qubit density matrix, n >= 2
        i: Index of the qubit to discard

    Returns:
        (n-1)-qubit density matrix
    """
    n = rho.n_qubits
    if not 0 <= i < n:
        raise ValueError(f"qubit index {i} out of range for {n} qubits")
    if n == 1:
        raise ValueError("cannot trace out the only qubit of a 1-qubit state")
    return DensityMatrix.from_array(partial_trace(rho.data, i, n), validate=False)


def uhlmann_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """F = [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, clipped to [0, 1]."""
    _check_same_dimension(rho, sigma)
    return fidelity_from_sqrts(psd_sqrt(rho.data), psd_sqrt(sigma.data))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Trace norm ||rho - sigma||_1 (no 1/2 prefactor)."""
    _check_same_dimension(rho, sigma)
    diff = rho.data - sigma.data
    return float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T)))))


def purity(rho: DensityMatrix) -> float:
    return rho.purity()


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -Tr rho log rho in nats."""
    w, _ = clipped_eigh(rho.data)
    w = w[w > 0.0]
    return float(-np.sum(w * np.log(w)))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """
    S(rho || sigma) = Tr rho (log rho - log sigma) in nats.

    Returns inf when rho has weight outside the support of sigma.
    """
    _check_same_dimension(rho, sigma)
    w_sigma, v_sigma = clipped_eigh(sigma.data)
    # populations of rho in sigma's eigenbasis
    weights = np.real(np.einsum("ki,kl,li->i", v_sigma.conj(), rho.data, v_sigma))
    support = w_sigma > 0.0
    if np.any(weights[~support] > 1e-12):
        return float("inf")
    cross = float(np.sum(weights[support] * np.log(w_sigma[support])))
    return max(-von_neumann_entropy(rho) - cross, 0.0)
