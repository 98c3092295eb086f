"""
Pydantic models for sampled trajectories and validation reports.
"""
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from modules.qstate.models.qstate import PureState


class TrajectoryRecord(BaseModel):
    """One sampled pure-state instance of the circuit."""
    model_config = ConfigDict(frozen=True)

    branches: List[bool] = Field(..., description="Whether each reset slot fired, in slot order")
    outcomes: List[int] = Field(default_factory=list, description="Measurement outcome of every fired reset")
    kraus_indices: List[int] = Field(default_factory=list, description="Kraus operator chosen at every noise event")
    weights: List[float] = Field(default_factory=list, description="Born probability of every sampled outcome")
    final_state: PureState = Field(..., description="Normalized output state")

    @field_validator("weights")
    @classmethod
    def _check_weights(cls, value: List[float]) -> List[float]:
        for w in value:
            if not 0.0 < w <= 1.0 + 1e-12:
                raise ValueError(f"sampled outcome weight {w} outside (0, 1]")
        return value


class ConvergenceReport(BaseModel):
    """Trajectory estimates compared against the density-matrix output."""
    n: int = Field(..., description="Qubits")
    depth_d: int = Field(..., description="Dissipative layers")
    noisy: bool = Field(..., description="Whether noise was unraveled")
    samples: int = Field(..., description="Trajectories per estimate at the base sample count")
    larger_samples: int = Field(..., description="Trajectories per estimate at the grown sample count")
    repetitions: int = Field(..., description="Independent estimates per sample count")
    enumeration_error: Optional[float] = Field(
        None, description="Trace distance between the exhaustive branch mixture and evolve; None when skipped"
    )
    median_error: float = Field(..., description="Median trace distance at the base sample count")
    median_error_larger: float = Field(..., description="Median trace distance at the grown sample count")
    error_ratio: float = Field(..., description="median_error / median_error_larger")
    std_error: float = Field(..., description="Reported statistical error of the first base-count estimate")


class TrajectoryValidationRequest(BaseModel):
    """Parameters of a trajectory-vs-density validation."""
    n: int = Field(default=2, ge=2, description="Even ring size")
    depth_d: int = Field(default=1, ge=0, description="Dissipative layers")
    samples: int = Field(default=10000, ge=1, description="Base number of trajectories")
    repetitions: int = Field(default=20, ge=1, description="Repetitions per sample count")
    seed: int = Field(default=0, description="Seed for parameters and sampling")
    noise_rate: Optional[float] = Field(
        None, ge=0.0, le=1.0, description="Uniform dephasing and damping rate; noiseless when omitted"
    )
