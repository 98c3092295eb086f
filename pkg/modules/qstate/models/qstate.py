"""
Pydantic models for many-qubit states.

Qubit 0 is the most significant bit of the computational-basis index.
"""
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
NORM_TOL = 1e-10
EIGEN_FLOOR = -1e-9
MAX_QUBITS = 10


def qubits_for_dimension(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension, rejecting non powers of two."""
    n = int(dim).bit_length() - 1
    if dim < 2 or 2 ** n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


def _frozen_complex(value) -> np.ndarray:
    arr = np.array(value, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


class DensityMatrix(BaseModel):
    """Hermitian, unit-trace, positive semidefinite operator on n qubits."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_qubits: int = Field(..., ge=1, le=MAX_QUBITS, description="Number of qubits")
    data: np.ndarray = Field(..., description="2^n x 2^n complex matrix")

    @field_validator("data", mode="before")
    @classmethod
    def _as_complex(cls, value):
        return _frozen_complex(value)

    @model_validator(mode="after")
    def _check_invariants(self) -> "DensityMatrix":
        dim = 2 ** self.n_qubits
        if self.data.shape != (dim, dim):
            raise ValueError(f"data has shape {self.data.shape}, expected {(dim, dim)}")
        if np.max(np.abs(self.data - self.data.conj().T)) > HERMITIAN_TOL:
            raise ValueError("data is not Hermitian")
        if abs(np.trace(self.data) - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {np.trace(self.data).real:.12g}, expected 1")
        min_eig = float(np.linalg.eigvalsh(self.data).min())
        if min_eig < EIGEN_FLOOR:
            raise ValueError(f"minimum eigenvalue {min_eig:.3e} below floor {EIGEN_FLOOR}")
        return self

    @classmethod
    def from_array(cls, data, validate: bool = True) -> "DensityMatrix":
        """
        Wrap a square array, inferring the qubit count from its dimension.

        Args:
            data: Square complex array
            validate: Skip invariant checks when False (kernel outputs already known valid)
        """
        arr = np.asarray(data)
        n = qubits_for_dimension(arr.shape[0])
        if validate:
            return cls(n_qubits=n, data=arr)
        return cls.model_construct(n_qubits=n, data=_frozen_complex(arr))

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.data, self.data)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(self.data, other.data)


class PureState(BaseModel):
    """Unit-norm state vector on n qubits."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_qubits: int = Field(..., ge=1, le=MAX_QUBITS, description="Number of qubits")
    amplitudes: np.ndarray = Field(..., description="Complex amplitude vector of length 2^n")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _as_complex(cls, value):
        return _frozen_complex(value)

    @model_validator(mode="after")
    def _check_norm(self) -> "PureState":
        if self.amplitudes.shape != (2 ** self.n_qubits,):
            raise ValueError(f"amplitudes have shape {self.amplitudes.shape}, expected {(2 ** self.n_qubits,)}")
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm is {norm:.12g}, expected 1")
        return self

    @classmethod
    def from_array(cls, amplitudes, n_qubits: Optional[int] = None) -> "PureState":
        arr = np.asarray(amplitudes)
        n = n_qubits if n_qubits is not None else qubits_for_dimension(arr.shape[0])
        return cls(n_qubits=n, amplitudes=arr)

    def to_density(self) -> DensityMatrix:
        psi = self.amplitudes
        return DensityMatrix.from_array(np.outer(psi, psi.conj()), validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(self.amplitudes, other.amplitudes)
