"""
Pydantic models for the circuit layout and its parameter vector.
"""
from typing import Annotated, List, Literal, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from modules.channels.models.channels import SU4_ANGLE_COUNT
from modules.qstate.models.qstate import MAX_QUBITS

RESET_PARAM_COUNT = 3


class Su4Slot(BaseModel):
    """Two-qubit gate on a ring pair; reads 15 angles starting at `offset`."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["su4"] = "su4"
    pair: Tuple[int, int] = Field(..., description="Target qubits (a, b) with b = a + 1 mod n")
    offset: int = Field(..., ge=0, description="Index of the first angle in the parameter vector")

    @property
    def n_params(self) -> int:
        return SU4_ANGLE_COUNT


class ResetSlot(BaseModel):
    """Reset gate on one qubit; reads [p, theta, varphi] starting at `offset`."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["reset"] = "reset"
    qubit: int = Field(..., ge=0, description="Target qubit")
    offset: int = Field(..., ge=0, description="Index of the reset probability in the parameter vector")

    @property
    def n_params(self) -> int:
        return RESET_PARAM_COUNT


Slot = Annotated[Union[Su4Slot, ResetSlot], Field(discriminator="kind")]


class AnsatzLayout(BaseModel):
    """Ordered gate slots of D dissipative layers followed by one coherent layer."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, le=MAX_QUBITS, description="Qubits on the ring")
    depth_d: int = Field(..., ge=0, description="Number of dissipative layers")
    gate_sequence: List[Slot] = Field(..., description="Slots in application order")

    @field_validator("n")
    @classmethod
    def _check_even(cls, value: int) -> int:
        if value % 2:
            raise ValueError(f"ring size must be even, got n={value}")
        return value

    @model_validator(mode="after")
    def _check_offsets(self) -> "AnsatzLayout":
        expected = 0
        for slot in self.gate_sequence:
            if slot.offset != expected:
                raise ValueError(f"slot offset {slot.offset} does not follow previous slots (expected {expected})")
            expected += slot.n_params
        return self

    @property
    def n_params(self) -> int:
        return sum(slot.n_params for slot in self.gate_sequence)

    @property
    def reset_slots(self) -> List[ResetSlot]:
        return [slot for slot in self.gate_sequence if isinstance(slot, ResetSlot)]

    def probability_indices(self) -> np.ndarray:
        """Parameter indices holding reset probabilities."""
        return np.array([slot.offset for slot in self.reset_slots], dtype=int)

    def probability_mask(self) -> np.ndarray:
        mask = np.zeros(self.n_params, dtype=bool)
        mask[self.probability_indices()] = True
        return mask

    def slot_index_of_parameter(self) -> np.ndarray:
        """Map each parameter index to the position of the slot that reads it."""
        owners = np.empty(self.n_params, dtype=int)
        for k, slot in enumerate(self.gate_sequence):
            owners[slot.offset:slot.offset + slot.n_params] = k
        return owners


class ParameterVector(BaseModel):
    """
    Flat parameter vector with per-entry box bounds.

    Angle entries carry infinite bounds and are periodic; probability entries
    are bounded by [0, cap].
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray = Field(..., description="Real parameter values")
    lower: np.ndarray = Field(..., description="Lower bound per entry")
    upper: np.ndarray = Field(..., description="Upper bound per entry")

    @field_validator("values", "lower", "upper", mode="before")
    @classmethod
    def _as_float(cls, value):
        arr = np.array(value, dtype=np.float64).reshape(-1)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check_bounds(self) -> "ParameterVector":
        if not (self.values.shape == self.lower.shape == self.upper.shape):
            raise ValueError(
                f"values, lower and upper differ in length: "
                f"{self.values.size}, {self.lower.size}, {self.upper.size}"
            )
        bounded = np.isfinite(self.lower)
        if np.any(self.values[bounded] < self.lower[bounded]) or np.any(self.values[bounded] > self.upper[bounded]):
            raise ValueError("probability entries outside their bounds")
        return self

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def periodic_mask(self) -> np.ndarray:
        return ~np.isfinite(self.lower)

    def with_values(self, values: np.ndarray) -> "ParameterVector":
        """Same bounds, new values (validated)."""
        return ParameterVector(values=values, lower=self.lower, upper=self.upper)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParameterVector):
            return NotImplemented
        return (
            np.array_equal(self.values, other.values)
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
        )
