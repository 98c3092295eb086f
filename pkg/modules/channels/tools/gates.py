"""
Single- and two-qubit gate matrices.

Two-qubit operators act on (a, b) with a the more significant index bit.
"""
from typing import Sequence, Tuple

import numpy as np

from modules.channels.models.channels import BlochAngles
from modules.qstate.models.qstate import PureState
from modules.qstate.tools.state_ops import kron

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
S = np.diag([1.0, 1.0j]).astype(np.complex128)
S_DAG = S.conj().T
CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=np.complex128,
)
XX = kron(X, X)
YY = kron(Y, Y)
ZZ = kron(Z, Z)


def rz(theta: float) -> np.ndarray:
    """exp(-i theta Z / 2)."""
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)]).astype(np.complex128)


def ry(theta: float) -> np.ndarray:
    """exp(-i theta Y / 2)."""
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def euler_zyz(angles: Sequence[float]) -> np.ndarray:
    """Rz(a) Ry(b) Rz(c) for angles (a, b, c)."""
    a, b, c = angles
    return rz(a) @ ry(b) @ rz(c)


def pauli_exp(theta: float, pauli: np.ndarray) -> np.ndarray:
    """exp(i theta P) for an involutory Pauli string P."""
    return np.cos(theta) * np.eye(pauli.shape[0], dtype=np.complex128) + 1j * np.sin(theta) * pauli


def entangling_core(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """exp(i (alpha XX + beta YY + gamma ZZ)); the three terms commute."""
    return pauli_exp(alpha, XX) @ pauli_exp(beta, YY) @ pauli_exp(gamma, ZZ)


def su4_matrix(angles: Sequence[float]) -> np.ndarray:
    """
    Dense 4x4 unitary (A1 x A2) N(alpha, beta, gamma) (B1 x B2).

    Args:
        angles: Fifteen angles [B1, B2, A1, A2, alpha, beta, gamma]

    Returns:
        4x4 complex unitary
    """
    angles = list(angles)
    pre = kron(euler_zyz(angles[0:3]), euler_zyz(angles[3:6]))
    post = kron(euler_zyz(angles[6:9]), euler_zyz(angles[9:12]))
    return post @ entangling_core(*angles[12:15]) @ pre


def su4_segments(angles: Sequence[float]) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Split su4_matrix into four factors W3 W2 W1 W0 around three CX gates.

    W0, W1 and W2 each end with a CX(a -> b); hardware noise acts after each
    of them. The product W3 @ W2 @ W1 @ W0 equals su4_matrix(angles) exactly.

    Args:
        angles: Fifteen angles [B1, B2, A1, A2, alpha, beta, gamma]

    Returns:
        Tuple (W0, W1, W2, W3) of 4x4 unitaries in application order
    """
    angles = list(angles)
    b1, b2 = euler_zyz(angles[0:3]), euler_zyz(angles[3:6])
    a1, a2 = euler_zyz(angles[6:9]), euler_zyz(angles[9:12])
    alpha, beta, gamma = angles[12:15]
    w0 = CX @ kron(b1, S_DAG @ b2)
    w1 = CX @ kron(pauli_exp(-beta, X) @ S, H @ S)
    w2 = CX @ kron(pauli_exp(alpha, X), pauli_exp(gamma, Z) @ H)
    w3 = kron(a1, a2)
    return w0, w1, w2, w3


def bloch_ket(theta: float, varphi: float) -> np.ndarray:
    """cos(theta/2)|0> + e^{i varphi} sin(theta/2)|1>."""
    return np.array(
        [np.cos(0.5 * theta), np.exp(1j * varphi) * np.sin(0.5 * theta)],
        dtype=np.complex128,
    )


def bloch_projector(theta: float, varphi: float) -> np.ndarray:
    ket = bloch_ket(theta, varphi)
    return np.outer(ket, ket.conj())


def bloch_pure_state(angles: BlochAngles) -> PureState:
    """Single-qubit pure state with the given Bloch angles."""
    return PureState.from_array(bloch_ket(angles.theta, angles.varphi), n_qubits=1)
