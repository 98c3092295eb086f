"""
Pydantic models for target Hamiltonians and thermal states.
"""
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from modules.qstate.models.qstate import HERMITIAN_TOL, MAX_QUBITS, DensityMatrix

COMMUTATOR_TOL = 1e-8


class TfiDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["tfi"] = "tfi"
    h: float = Field(..., description="Transverse field strength")

    @property
    def label(self) -> str:
        return f"tfi(h={self.h:g})"


class XyDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["xy"] = "xy"
    gamma: float = Field(..., description="Anisotropy between XX and YY couplings")
    h: float = Field(..., description="Transverse field strength")

    @property
    def label(self) -> str:
        return f"xy(gamma={self.gamma:g},h={self.h:g})"


class RandomDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["random"] = "random"
    seed: int = Field(..., description="Seed of the drawn bond term")

    @property
    def label(self) -> str:
        return f"random(seed={self.seed})"


HamiltonianDescriptor = Annotated[
    Union[TfiDescriptor, XyDescriptor, RandomDescriptor],
    Field(discriminator="kind"),
]


class RingHamiltonian(BaseModel):
    """Hermitian, translation-invariant Hamiltonian on a ring of n qubits."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(..., ge=2, le=MAX_QUBITS, description="Qubits on the ring")
    matrix: np.ndarray = Field(..., description="2^n x 2^n Hermitian matrix")
    descriptor: HamiltonianDescriptor = Field(..., description="Model family and parameters")

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_complex(cls, value):
        arr = np.array(value, dtype=np.complex128)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check_hermitian(self) -> "RingHamiltonian":
        dim = 2 ** self.n
        if self.matrix.shape != (dim, dim):
            raise ValueError(f"matrix has shape {self.matrix.shape}, expected {(dim, dim)}")
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > HERMITIAN_TOL:
            raise ValueError("Hamiltonian is not Hermitian")
        return self


class GibbsTarget(BaseModel):
    """Thermal state exp(-beta H) / Z together with its Hamiltonian."""
    model_config = ConfigDict(frozen=True)

    beta: float = Field(..., ge=0.0, description="Inverse temperature")
    state: DensityMatrix = Field(..., description="Gibbs state")
    hamiltonian: RingHamiltonian = Field(..., description="Hamiltonian the state is thermal for")

    @model_validator(mode="after")
    def _check_commutes(self) -> "GibbsTarget":
        h, rho = self.hamiltonian.matrix, self.state.data
        if h.shape != rho.shape:
            raise ValueError(f"state shape {rho.shape} does not match Hamiltonian shape {h.shape}")
        if np.max(np.abs(h @ rho - rho @ h)) > COMMUTATOR_TOL:
            raise ValueError("Gibbs state does not commute with its Hamiltonian")
        return self
