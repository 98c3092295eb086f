"""
Pydantic models for the single-qubit toy model.
"""
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

UNIT_TOL = 1e-10


class ToyScenario(BaseModel):
    """Input state radius and direction, noise rate and ideal unitary."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    radius: float = Field(..., ge=0.0, le=1.0, description="Bloch radius |r| of the input state")
    direction: Tuple[float, float, float] = Field(default=(0.0, 0.0, 1.0), description="Unit Bloch direction")
    lam: float = Field(..., ge=0.0, le=1.0, description="Depolarizing rate")
    unitary: np.ndarray = Field(default_factory=lambda: np.eye(2, dtype=np.complex128), description="Ideal gate U")

    @field_validator("direction")
    @classmethod
    def _check_unit(cls, value: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if abs(float(np.linalg.norm(value)) - 1.0) > UNIT_TOL:
            raise ValueError(f"direction {value} is not a unit vector")
        return value

    @field_validator("unitary", mode="before")
    @classmethod
    def _check_unitary(cls, value):
        u = np.array(value, dtype=np.complex128)
        if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - np.eye(2))) > UNIT_TOL:
            raise ValueError("unitary must be a 2x2 unitary matrix")
        u.setflags(write=False)
        return u


class ResetProbability(BaseModel):
    """Best reset probability for a (radius, rate) pair."""
    feasible: bool = Field(..., description="Whether the noise can be cancelled exactly")
    p: float = Field(..., ge=0.0, le=1.0, description="Optimal reset probability, 1 when infeasible")
    residual: float = Field(..., ge=0.0, description="Trace distance to the ideal output at p")


class ToyTableRow(BaseModel):
    lam: float = Field(..., description="Depolarizing rate")
    radius: float = Field(..., description="Bloch radius")
    p: float = Field(..., description="Optimal reset probability")
    feasible: bool = Field(..., description="Exact cancellation possible")
    residual: float = Field(..., description="Remaining trace distance")


class ToyTableRequest(BaseModel):
    lambdas: List[float] = Field(..., min_length=1, description="Depolarizing rates in [0, 1)")
    radii: List[float] = Field(..., min_length=1, description="Bloch radii in (0, 1]")


class ToyTableResponse(BaseModel):
    rows: List[ToyTableRow] = Field(..., description="One row per (rate, radius) pair")
