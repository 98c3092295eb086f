"""
Quantum channels on density matrices.

Public functions validate their arguments and return DensityMatrix values;
the *_kernel variants operate on raw arrays, and the *_superop builders
return local maps as matrices for the evolution loop.
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from modules.channels.models.channels import NoiseModel, ResetGateParams, Su4Params
from modules.channels.tools.gates import I2, Z, bloch_projector, su4_matrix, su4_segments
from modules.qstate.models.qstate import DensityMatrix
from modules.qstate.tools.tensor_ops import (
    amplitude_damp,
    conjugate,
    dephase,
    insert_qubit,
    partial_trace,
)

UNITARY_TOL = 1e-10


def _check_qubit(index: int, n: int) -> None:
    if not 0 <= index < n:
        raise ValueError(f"qubit index {index} out of range for {n} qubits")


def _check_rate(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name}={value} outside [0, 1]")


def check_ring_pair(qubits: Sequence[int], n: int) -> Tuple[int, int]:
    """Validate that (a, b) are ring neighbours with b = a + 1 mod n."""
    if len(qubits) != 2:
        raise ValueError(f"expected a qubit pair, got {tuple(qubits)}")
    a, b = int(qubits[0]), int(qubits[1])
    _check_qubit(a, n)
    _check_qubit(b, n)
    if n < 2 or a == b or b != (a + 1) % n:
        raise ValueError(f"qubits ({a}, {b}) are not ring-adjacent on {n} qubits")
    return a, b


def apply_local_unitary(rho: DensityMatrix, u: np.ndarray, targets: Sequence[int]) -> DensityMatrix:
    """
    Conjugate rho by a 1- or 2-qubit unitary embedded on `targets`.

    Args:
        rho: n-qubit state
        u: 2^k x 2^k unitary, k = len(targets)
        targets: Distinct qubit indices; targets[0] is the most significant
            index of u

    Returns:
        u rho u^dagger
    """
    u = np.asarray(u, dtype=np.complex128)
    k = len(targets)
    if k not in (1, 2):
        raise ValueError(f"only 1- and 2-qubit unitaries are supported, got {k} targets")
    if len(set(targets)) != k:
        raise ValueError(f"duplicate targets {tuple(targets)}")
    for q in targets:
        _check_qubit(q, rho.n_qubits)
    if u.shape != (2 ** k, 2 ** k):
        raise ValueError(f"unitary shape {u.shape} does not match {k} targets")
    if np.max(np.abs(u.conj().T @ u - np.eye(2 ** k))) > UNITARY_TOL:
        raise ValueError("operator is not unitary")
    return DensityMatrix.from_array(conjugate(rho.data, u, list(targets), rho.n_qubits), validate=False)


def reset_kernel(data: np.ndarray, qubit: int, n: int, p: float, projector: np.ndarray) -> np.ndarray:
    """(1 - p) rho + p |phi><phi|_qubit (x) Tr_qubit rho."""
    if p == 0.0:
        return data
    reset = insert_qubit(partial_trace(data, qubit, n), projector, qubit, n)
    return (1.0 - p) * data + p * reset


def reset_channel(rho: DensityMatrix, i: int, gate: ResetGateParams) -> DensityMatrix:
    """Probabilistically replace qubit i with the gate's target state."""
    _check_qubit(i, rho.n_qubits)
    projector = bloch_projector(gate.target.theta, gate.target.varphi)
    return DensityMatrix.from_array(
        reset_kernel(rho.data, i, rho.n_qubits, gate.p, projector), validate=False
    )


def dephasing_channel(rho: DensityMatrix, j: int, lam: float) -> DensityMatrix:
    """(1 - lam) rho + lam Z_j rho Z_j."""
    _check_qubit(j, rho.n_qubits)
    _check_rate("lambda", lam)
    return DensityMatrix.from_array(dephase(rho.data, j, rho.n_qubits, lam), validate=False)


def amplitude_damping_channel(rho: DensityMatrix, j: int, omega: float) -> DensityMatrix:
    """Relax qubit j towards |0> with probability omega."""
    _check_qubit(j, rho.n_qubits)
    _check_rate("omega", omega)
    return DensityMatrix.from_array(amplitude_damp(rho.data, j, rho.n_qubits, omega), validate=False)


def depolarizing_channel(rho: DensityMatrix, lam: float) -> DensityMatrix:
    """Single-qubit depolarizing map (1 - lam) rho + lam I/2."""
    if rho.n_qubits != 1:
        raise ValueError(f"depolarizing channel is single-qubit, got {rho.n_qubits} qubits")
    _check_rate("lambda", lam)
    data = (1.0 - lam) * rho.data + lam * np.trace(rho.data) * np.eye(2) / 2.0
    return DensityMatrix.from_array(data, validate=False)


def cx_noise_kernel(data: np.ndarray, pair: Tuple[int, int], n: int, noise: NoiseModel) -> np.ndarray:
    """Dephasing then amplitude damping on both qubits of a CX."""
    for q in pair:
        data = dephase(data, q, n, noise.lambdas[q])
        data = amplitude_damp(data, q, n, noise.omegas[q])
    return data


def su4_noisy_kernel(
    data: np.ndarray,
    angles: Sequence[float],
    pair: Tuple[int, int],
    n: int,
    noise: NoiseModel,
) -> np.ndarray:
    """Apply the two-qubit gate with noise after each of its three CX gates."""
    if not noise.enabled:
        return conjugate(data, su4_matrix(angles), pair, n)
    w0, w1, w2, w3 = su4_segments(angles)
    for segment in (w0, w1, w2):
        data = conjugate(data, segment, pair, n)
        data = cx_noise_kernel(data, pair, n, noise)
    return conjugate(data, w3, pair, n)


def apply_su4_noisy(
    rho: DensityMatrix,
    params: Su4Params,
    qubits: Sequence[int],
    noise: NoiseModel,
) -> DensityMatrix:
    """
    Apply a two-qubit gate to ring-adjacent qubits under hardware noise.

    Args:
        rho: n-qubit state, n >= 2
        params: Gate angles
        qubits: Pair (a, b) with b = a + 1 mod n
        noise: Noise model; disabled models give the ideal conjugation

    Returns:
        Output state
    """
    pair = check_ring_pair(qubits, rho.n_qubits)
    noise.check_covers(rho.n_qubits)
    out = su4_noisy_kernel(rho.data, params.angles, pair, rho.n_qubits, noise)
    return DensityMatrix.from_array(out, validate=False)


def dephasing_kraus(lam: float) -> List[np.ndarray]:
    """Kraus pair sqrt(1 - lam) I, sqrt(lam) Z."""
    _check_rate("lambda", lam)
    return [np.sqrt(1.0 - lam) * I2, np.sqrt(lam) * Z]


def amplitude_damping_kraus(omega: float) -> List[np.ndarray]:
    """Kraus pair diag(1, sqrt(1 - omega)), sqrt(omega) |0><1|."""
    _check_rate("omega", omega)
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - omega)]], dtype=np.complex128)
    k1 = np.array([[0.0, np.sqrt(omega)], [0.0, 0.0]], dtype=np.complex128)
    return [k0, k1]


def unitary_superop(u: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> u rho u^dagger on row-major vec(rho)."""
    return np.kron(u, u.conj())


def kraus_superop(kraus_ops: Sequence[np.ndarray]) -> np.ndarray:
    """Superoperator of rho -> sum_k K_k rho K_k^dagger."""
    return sum(np.kron(k_op, k_op.conj()) for k_op in kraus_ops)


def reset_superop(p: float, projector: np.ndarray) -> np.ndarray:
    """4x4 superoperator of (1 - p) rho + p |phi><phi| Tr rho."""
    return (1.0 - p) * np.eye(4, dtype=np.complex128) + p * np.outer(projector.reshape(-1), I2.reshape(-1))


def cx_noise_superop(pair: Tuple[int, int], noise: NoiseModel) -> np.ndarray:
    """16x16 superoperator of the noise after one CX: dephasing then damping on each qubit."""
    per_qubit = [
        [damp @ phase for damp in amplitude_damping_kraus(noise.omegas[q]) for phase in dephasing_kraus(noise.lambdas[q])]
        for q in pair
    ]
    return kraus_superop([np.kron(ka, kb) for ka in per_qubit[0] for kb in per_qubit[1]])


def su4_superop(angles: Sequence[float], noise_superop: Optional[np.ndarray] = None) -> np.ndarray:
    """
    16x16 superoperator of the two-qubit gate.

    Args:
        angles: Fifteen gate angles
        noise_superop: Map applied after each of the three CX gates, or None
            for the ideal gate

    Returns:
        Superoperator on the row-major vectorization of the pair's block
    """
    if noise_superop is None:
        return unitary_superop(su4_matrix(angles))
    w0, w1, w2, w3 = su4_segments(angles)
    out = noise_superop @ unitary_superop(w0)
    for segment in (w1, w2):
        out = noise_superop @ (unitary_superop(segment) @ out)
    return unitary_superop(w3) @ out
