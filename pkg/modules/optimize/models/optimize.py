"""
Pydantic models for the optimization loop.
"""
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config_loader import config_section, load_module_config
from modules.ansatz.models.ansatz import AnsatzLayout
from modules.channels.models.channels import NoiseModel
from modules.hamiltonians.models.hamiltonians import GibbsTarget
from modules.qstate.models.qstate import DensityMatrix
from modules.qstate.tools.state_ops import basis_state

LossKind = Literal["infidelity", "half_trace_distance"]
Termination = Literal["max_steps", "loss_threshold"]


class AdamSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    lr: float = Field(default=0.02, gt=0.0, description="Learning rate")
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0, description="First-moment decay")
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0, description="Second-moment decay")
    eps: float = Field(default=1e-8, gt=0.0, description="Denominator offset")


class GradientScheme(BaseModel):
    """Finite-difference scheme and step size."""
    model_config = ConfigDict(frozen=True)

    scheme: Literal["central", "forward"] = Field(default="central", description="Difference formula")
    step: float = Field(default=1e-4, gt=0.0, description="Step size h for angles and probabilities")


class OptimizerSettings(BaseModel):
    """Hyperparameters of a single optimization run."""
    model_config = ConfigDict(frozen=True)

    adam: AdamSettings = Field(default_factory=AdamSettings)
    gradient: GradientScheme = Field(default_factory=GradientScheme)
    max_steps: int = Field(default=2000, ge=1, description="Maximum Adam steps")
    loss_stop: float = Field(default=1e-3, ge=0.0, description="Stop once the loss falls below this value")
    loss: LossKind = Field(default="infidelity", description="Loss minimized by the run")
    log_every: int = Field(default=100, ge=1, description="Debug-log the loss every this many steps")

    @classmethod
    def from_config(cls, config: Optional[Dict[str, Any]] = None) -> "OptimizerSettings":
        """
        Build settings from the module config mapping.

        Args:
            config: Parsed optimize config; loads modules/optimize/config.yaml when None
        """
        if config is None:
            config = load_module_config("optimize")
        run = config_section(config, "run")
        return cls(
            adam=AdamSettings(**config_section(config, "adam")),
            gradient=GradientScheme(**config_section(config, "gradient")),
            **{k: v for k, v in run.items() if k in cls.model_fields},
        )


class LossContext(BaseModel):
    """Everything the loss needs besides the parameter vector."""
    model_config = ConfigDict(frozen=True)

    layout: AnsatzLayout
    noise: NoiseModel
    target: GibbsTarget
    rho0: Optional[DensityMatrix] = Field(default=None, description="Input state, |0...0> when omitted")
    loss: LossKind = Field(default="infidelity", description="Distinguishability measure")

    @model_validator(mode="after")
    def _check_dimensions(self) -> "LossContext":
        n = self.layout.n
        if self.target.state.n_qubits != n:
            raise ValueError(f"target has {self.target.state.n_qubits} qubits, layout has {n}")
        if self.rho0 is None:
            object.__setattr__(self, "rho0", basis_state(n))
        elif self.rho0.n_qubits != n:
            raise ValueError(f"input state has {self.rho0.n_qubits} qubits, layout has {n}")
        self.noise.check_covers(n)
        return self


class AdamState(BaseModel):
    """Moment estimates and hyperparameters of projected Adam."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    step: int = Field(default=0, ge=0, description="Number of updates applied")
    m: np.ndarray = Field(..., description="First-moment estimate")
    v: np.ndarray = Field(..., description="Second-moment estimate")
    lr: float = Field(default=0.02, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-8, gt=0.0)

    @field_validator("m", "v", mode="before")
    @classmethod
    def _as_float(cls, value):
        return np.array(value, dtype=np.float64).reshape(-1)

    @model_validator(mode="after")
    def _check_lengths(self) -> "AdamState":
        if self.m.shape != self.v.shape:
            raise ValueError(f"moment vectors differ in length: {self.m.size} vs {self.v.size}")
        return self

    @classmethod
    def initial(cls, n_params: int, settings: Optional[AdamSettings] = None) -> "AdamState":
        settings = settings or AdamSettings()
        return cls(m=np.zeros(n_params), v=np.zeros(n_params), **settings.model_dump())


class RunRecord(BaseModel):
    """Outcome of one seeded optimization run."""
    config: Dict[str, Any] = Field(..., description="Snapshot of the run configuration")
    seed: int = Field(..., description="Seed used for parameter initialization")
    loss_trace: List[float] = Field(..., description="Loss before every update, plus the final value")
    final_params: List[float] = Field(..., description="Parameter values at termination")
    final_fidelity: float = Field(..., ge=0.0, le=1.0, description="Fidelity of the output with the target")
    final_relative_entropy: Optional[float] = Field(None, description="S(output || target); None when infinite")
    termination: Termination = Field(..., description="Why the run stopped")
    steps: int = Field(..., ge=0, description="Adam updates applied")
    wall_seconds: float = Field(..., ge=0.0, description="Wall-clock duration")
    noise: NoiseModel = Field(..., description="Noise model the run was optimized under")

    @field_validator("loss_trace")
    @classmethod
    def _check_trace(cls, value: List[float]) -> List[float]:
        for loss in value:
            if not 0.0 <= loss <= 1.0:
                raise ValueError(f"loss value {loss} outside [0, 1]")
        return value

    @property
    def final_loss(self) -> float:
        return self.loss_trace[-1]
