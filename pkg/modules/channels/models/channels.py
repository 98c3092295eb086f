"""
Pydantic models for gate parameters and the hardware noise model.
"""
import math
from typing import Any, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SU4_ANGLE_COUNT = 15
DEFAULT_P_STAR = 0.99


class BlochAngles(BaseModel):
    """Polar/azimuthal angles of a single-qubit pure state."""
    model_config = ConfigDict(frozen=True)

    theta: float = Field(..., ge=0.0, le=math.pi, description="Polar angle in [0, pi]")
    varphi: float = Field(..., ge=-math.pi, lt=math.pi, description="Azimuthal angle in [-pi, pi)")

    @model_validator(mode="before")
    @classmethod
    def _reduce(cls, data: Any) -> Any:
        """Map arbitrary real angles onto the canonical ranges without moving the Bloch vector."""
        if not isinstance(data, dict) or "theta" not in data or "varphi" not in data:
            return data
        theta = math.fmod(float(data["theta"]), 2.0 * math.pi)
        if theta < 0.0:
            theta += 2.0 * math.pi
        varphi = float(data["varphi"])
        if theta > math.pi:
            theta = 2.0 * math.pi - theta
            varphi += math.pi
        varphi = math.fmod(varphi + math.pi, 2.0 * math.pi)
        if varphi < 0.0:
            varphi += 2.0 * math.pi
        varphi -= math.pi
        return {**data, "theta": theta, "varphi": varphi}

    def bloch_vector(self) -> Tuple[float, float, float]:
        return (
            math.sin(self.theta) * math.cos(self.varphi),
            math.sin(self.theta) * math.sin(self.varphi),
            math.cos(self.theta),
        )


class ResetGateParams(BaseModel):
    """Activation probability and target state of a reset gate."""
    model_config = ConfigDict(frozen=True)

    p: float = Field(..., ge=0.0, le=1.0, description="Reset activation probability")
    target: BlochAngles = Field(..., description="State the qubit is reset to")


class Su4Params(BaseModel):
    """
    Fifteen angles of a general two-qubit gate (A1 x A2) N(alpha, beta, gamma) (B1 x B2).

    Layout: [B1 (3), B2 (3), A1 (3), A2 (3), alpha, beta, gamma]; each local
    factor is Rz(a) Ry(b) Rz(c).
    """
    model_config = ConfigDict(frozen=True)

    angles: Tuple[float, ...] = Field(..., description="Fifteen rotation angles in radians")

    @field_validator("angles")
    @classmethod
    def _check_length(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if len(value) != SU4_ANGLE_COUNT:
            raise ValueError(f"expected {SU4_ANGLE_COUNT} angles, got {len(value)}")
        return value

    @classmethod
    def identity(cls) -> "Su4Params":
        return cls(angles=(0.0,) * SU4_ANGLE_COUNT)

    @property
    def core(self) -> Tuple[float, float, float]:
        return self.angles[12], self.angles[13], self.angles[14]


class NoiseModel(BaseModel):
    """Per-qubit dephasing and amplitude-damping rates plus the reset cap."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lambdas: List[float] = Field(default_factory=list, alias="lambda", description="Dephasing rate per qubit")
    omegas: List[float] = Field(default_factory=list, alias="omega", description="Amplitude-damping rate per qubit")
    p_star: float = Field(default=DEFAULT_P_STAR, gt=0.0, le=1.0, description="Upper bound on reset probabilities")
    enabled: bool = Field(default=True, description="Whether noise and the reset cap apply")

    @field_validator("lambdas", "omegas")
    @classmethod
    def _check_rates(cls, value: List[float]) -> List[float]:
        for rate in value:
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"noise rate {rate} outside [0, 1]")
        return value

    @model_validator(mode="after")
    def _check_lengths(self) -> "NoiseModel":
        if len(self.lambdas) != len(self.omegas):
            raise ValueError(f"{len(self.lambdas)} dephasing rates but {len(self.omegas)} damping rates")
        return self

    @classmethod
    def noiseless(cls) -> "NoiseModel":
        return cls(enabled=False)

    @classmethod
    def uniform(cls, n_qubits: int, lam: float, omega: float, p_star: float = DEFAULT_P_STAR) -> "NoiseModel":
        return cls(lambdas=[lam] * n_qubits, omegas=[omega] * n_qubits, p_star=p_star)

    @property
    def reset_cap(self) -> float:
        """Largest reset probability the circuit may realize."""
        return self.p_star if self.enabled else 1.0

    def check_covers(self, n_qubits: int) -> None:
        """Raise when an enabled model lacks rates for some qubit."""
        if self.enabled and len(self.lambdas) < n_qubits:
            raise ValueError(f"noise model has rates for {len(self.lambdas)} qubits, circuit has {n_qubits}")
