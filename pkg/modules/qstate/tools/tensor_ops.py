"""
Array kernels for local operators acting on many-qubit matrices and vectors.

All kernels take raw complex arrays and the qubit count; they never validate
physical invariants, which keeps them usable inside the evolution hot loop.
An n-qubit matrix is viewed as a tensor with n row axes followed by n column
axes, qubit 0 first.
"""
from typing import Sequence

import numpy as np


def _contract(tensor: np.ndarray, op: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Apply a k-qubit operator to the given tensor axes."""
    k = len(axes)
    op_tensor = op.reshape((2,) * (2 * k))
    moved = np.tensordot(op_tensor, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(moved, list(range(k)), list(axes))


def apply_left(data: np.ndarray, op: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Return (op on targets) @ data."""
    dim = 2 ** n
    t = _contract(data.reshape((2,) * (2 * n)), op, targets)
    return t.reshape(dim, dim)


def conjugate(data: np.ndarray, op: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Return U data U^dagger with U = op embedded on targets."""
    dim = 2 ** n
    t = data.reshape((2,) * (2 * n))
    t = _contract(t, op, targets)
    t = _contract(t, op.conj(), [n + q for q in targets])
    return t.reshape(dim, dim)


def apply_superop(data: np.ndarray, superop: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """
    Apply a k-qubit channel given as a 4^k x 4^k superoperator.

    The superoperator acts on the row-major vectorization of the local block,
    i.e. on index (rows of targets, columns of targets).
    """
    dim = 2 ** n
    axes = list(targets) + [n + q for q in targets]
    t = _contract(data.reshape((2,) * (2 * n)), superop, axes)
    return t.reshape(dim, dim)


def apply_to_vector(psi: np.ndarray, op: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Return (op on targets) @ psi for a state vector."""
    t = _contract(psi.reshape((2,) * n), op, targets)
    return t.reshape(2 ** n)


def partial_trace(data: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Trace out one qubit, returning a (n-1)-qubit matrix."""
    reduced_dim = 2 ** (n - 1)
    t = np.trace(data.reshape((2,) * (2 * n)), axis1=qubit, axis2=n + qubit)
    return t.reshape(reduced_dim, reduced_dim)


def insert_qubit(reduced: np.ndarray, single: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Return single (on `qubit`) tensored with the (n-1)-qubit `reduced` matrix."""
    dim = 2 ** n
    t = np.kron(single, reduced).reshape((2,) * (2 * n))
    t = np.moveaxis(t, [0, n], [qubit, n + qubit])
    return t.reshape(dim, dim)


def _qubit_blocks(data: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """View with the row and column axes of `qubit` moved to the front."""
    return np.moveaxis(data.reshape((2,) * (2 * n)), [qubit, n + qubit], [0, 1])


def _from_blocks(blocks: np.ndarray, qubit: int, n: int) -> np.ndarray:
    dim = 2 ** n
    return np.moveaxis(blocks, [0, 1], [qubit, n + qubit]).reshape(dim, dim)


def dephase(data: np.ndarray, qubit: int, n: int, lam: float) -> np.ndarray:
    """(1 - lam) rho + lam Z rho Z on one qubit."""
    blocks = _qubit_blocks(data, qubit, n).astype(np.complex128)
    blocks[0, 1] *= 1.0 - 2.0 * lam
    blocks[1, 0] *= 1.0 - 2.0 * lam
    return _from_blocks(blocks, qubit, n)


def amplitude_damp(data: np.ndarray, qubit: int, n: int, omega: float) -> np.ndarray:
    """Kraus pair diag(1, sqrt(1-omega)), sqrt(omega)|0><1| on one qubit."""
    view = _qubit_blocks(data, qubit, n)
    blocks = np.empty(view.shape, dtype=np.complex128)
    keep = np.sqrt(1.0 - omega)
    blocks[0, 0] = view[0, 0] + omega * view[1, 1]
    blocks[1, 1] = (1.0 - omega) * view[1, 1]
    blocks[0, 1] = keep * view[0, 1]
    blocks[1, 0] = keep * view[1, 0]
    return _from_blocks(blocks, qubit, n)
