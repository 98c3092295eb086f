"""
Pydantic models for experiment configuration and results.
"""
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.config_loader import config_section, load_module_config
from modules.channels.models.channels import DEFAULT_P_STAR, NoiseModel
from modules.hamiltonians.models.hamiltonians import HamiltonianDescriptor
from modules.optimize.models.optimize import LossKind, Termination

SCHEMA_VERSION = 1
CSV_COLUMNS = [
    "model", "n", "D", "beta", "noisy", "seed", "restart",
    "fidelity", "steps", "termination", "wall_seconds",
]


class TfiModel(BaseModel):
    kind: Literal["tfi"] = "tfi"
    h: float = Field(..., description="Transverse field")


class XyModel(BaseModel):
    kind: Literal["xy"] = "xy"
    gamma: float = Field(..., description="Anisotropy")
    h: float = Field(..., description="Transverse field")


class RandomModel(BaseModel):
    kind: Literal["random"] = "random"
    count: int = Field(default=20, ge=1, description="Number of random Hamiltonians")
    seed: int = Field(default=0, description="Seed from which instance seeds are derived")


ModelSpec = Annotated[Union[TfiModel, XyModel, RandomModel], Field(discriminator="kind")]


class SweepAxes(BaseModel):
    """Optional size and depth axes; omitted axes fall back to the scalar n and depth_d."""
    n_values: Optional[List[int]] = Field(None, description="Ring sizes to sweep")
    depth_values: Optional[List[int]] = Field(None, description="Depths to sweep")
    depth_equals_n: bool = Field(False, description="Tie the depth to the ring size")

    @model_validator(mode="after")
    def _check_exclusive(self) -> "SweepAxes":
        if self.depth_equals_n and self.depth_values is not None:
            raise ValueError("depth_values and depth_equals_n are mutually exclusive")
        return self


class ExperimentConfig(BaseModel):
    """One experiment: a Hamiltonian family swept over temperatures (and optionally size and depth)."""
    model_config = ConfigDict(extra="forbid")

    schema_version: Literal[1] = Field(..., description="Config schema version")
    name: str = Field(default="experiment", description="Label used in log messages")
    model: ModelSpec = Field(..., description="Hamiltonian family")
    n: int = Field(default=4, ge=2, description="Ring size")
    depth_d: int = Field(default=4, ge=0, description="Dissipative layers")
    betas: List[float] = Field(..., min_length=1, description="Inverse temperatures")
    noisy: bool = Field(default=False, description="Optimize under hardware noise")
    noise_rate_range: Tuple[float, float] = Field(default=(1e-3, 2e-3), description="Uniform range of noise rates")
    p_star: float = Field(default=DEFAULT_P_STAR, gt=0.0, le=1.0, description="Reset probability cap under noise")
    restarts: int = Field(default=10, ge=1, description="Optimization runs per point")
    max_steps: int = Field(default=2000, ge=1, description="Adam steps per run")
    loss_stop: float = Field(default=1e-3, ge=0.0, description="Early-stopping loss")
    loss: LossKind = Field(default="infidelity", description="Loss minimized by every run")
    master_seed: int = Field(default=0, description="Root of every seed in the experiment")
    noise_redraw: Literal["per_point", "per_restart"] = Field(default="per_point", description="Noise sampling policy")
    record_wall_time: bool = Field(default=False, description="Store measured durations instead of 0.0")
    sweep: SweepAxes = Field(default_factory=SweepAxes, description="Optional size and depth axes")

    @field_validator("betas")
    @classmethod
    def _check_betas(cls, value: List[float]) -> List[float]:
        for beta in value:
            if beta < 0:
                raise ValueError(f"beta must be >= 0, got {beta}")
        return value

    @field_validator("noise_rate_range")
    @classmethod
    def _check_range(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        lo, hi = value
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError(f"noise_rate_range {value} must satisfy 0 <= lo <= hi <= 1")
        return value

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """
        Load and validate a YAML experiment file.

        Values from the harness config.yaml `defaults` block fill fields the
        file leaves out.
        """
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"experiment file {path} must contain a mapping")
        harness_config = load_module_config("harness")
        merged = {**config_section(harness_config, "defaults"), **data}
        model = merged.get("model")
        if isinstance(model, dict) and model.get("kind") == "random" and "count" not in model:
            count = config_section(harness_config, "random_model").get("count")
            if count is not None:
                merged["model"] = {**model, "count": count}
        return cls(**merged)

    def sizes(self) -> List[Tuple[int, int]]:
        """(n, D) pairs in canonical order."""
        n_values = self.sweep.n_values or [self.n]
        pairs = []
        for n in n_values:
            if self.sweep.depth_equals_n:
                depths = [n]
            else:
                depths = self.sweep.depth_values if self.sweep.depth_values is not None else [self.depth_d]
            pairs.extend((n, d) for d in depths)
        return pairs


class ResultRow(BaseModel):
    """One line of the flat results table."""
    model: str = Field(..., description="Hamiltonian label")
    n: int = Field(..., description="Ring size")
    D: int = Field(..., description="Dissipative layers")
    beta: float = Field(..., description="Inverse temperature")
    noisy: bool = Field(..., description="Whether the run was noisy")
    seed: int = Field(..., description="Restart seed")
    restart: int = Field(..., ge=0, description="Restart index within the point")
    best: bool = Field(default=False, description="Row repeats the best restart of its point")
    fidelity: float = Field(..., ge=0.0, le=1.0, description="Final fidelity")
    steps: int = Field(..., ge=0, description="Adam steps used")
    termination: Termination = Field(..., description="Stopping reason")
    wall_seconds: float = Field(..., ge=0.0, description="Wall-clock duration")


class ResultRecord(ResultRow):
    """ResultRow plus what is needed to re-derive its fidelity."""
    point: int = Field(..., ge=0, description="Experiment point index")
    descriptor: HamiltonianDescriptor = Field(..., description="Hamiltonian instance")
    noise: NoiseModel = Field(..., description="Noise model the run used")
    final_params: List[float] = Field(..., description="Final parameter values")
    final_relative_entropy: Optional[float] = Field(None, description="S(output || target)")
    loss_trace: List[float] = Field(default_factory=list, description="Loss per step")

    def to_row(self) -> ResultRow:
        return ResultRow(**{name: getattr(self, name) for name in ResultRow.model_fields})


class AuditResult(BaseModel):
    checked: int = Field(..., description="Records re-evaluated")
    max_abs_error: float = Field(..., description="Largest |stored - recomputed| fidelity")
    mismatches: List[int] = Field(default_factory=list, description="Indices of records beyond tolerance")


class EmitPlotsRequest(BaseModel):
    rows: List[ResultRow] = Field(..., min_length=1, description="Rows to aggregate")
    group_by: List[str] = Field(default_factory=lambda: ["beta"], description="Grouping columns")
    stat: Literal["best", "median", "std"] = Field(default="median", description="Statistic of the fidelity")
    best_only: bool = Field(default=True, description="Aggregate only best-marked rows")
