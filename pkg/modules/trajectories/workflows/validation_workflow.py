"""
Workflow comparing trajectory estimates against density-matrix evolution.
"""
import asyncio
import logging
from typing import Any, Dict, Optional

import numpy as np

from core.config_loader import config_section, load_module_config
from modules.ansatz.models.ansatz import AnsatzLayout, ParameterVector
from modules.ansatz.tools.evolution import evolve
from modules.ansatz.tools.layout import build_layout, init_parameters
from modules.channels.models.channels import NoiseModel
from modules.qstate.tools.state_ops import trace_distance
from modules.trajectories.models.trajectories import ConvergenceReport, TrajectoryValidationRequest
from modules.trajectories.tools.sampling import MAX_ENUMERATED_RESETS, enumerate_branches, estimate_density

logger = logging.getLogger(__name__)


def _estimate_seed(seed: int, repetition: int, size_index: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=(repetition, size_index)).generate_state(1)[0])


def convergence_report(
    layout: AnsatzLayout,
    params: ParameterVector,
    noise: NoiseModel,
    samples_m: int,
    repetitions: int,
    seed: int,
    growth_factor: int = 4,
) -> ConvergenceReport:
    """
    Median trace-distance error of trajectory estimates at M and growth_factor * M.

    Args:
        layout: Circuit layout
        params: Parameter vector
        noise: Noise model; enabled models are unraveled into Kraus jumps
        samples_m: Base number of trajectories M
        repetitions: Independent estimates per sample count
        seed: Master seed for all estimates
        growth_factor: Multiplier for the larger sample count

    Returns:
        ConvergenceReport
    """
    exact = evolve(layout, params, noise)
    enumeration_error = None
    if len(layout.reset_slots) <= MAX_ENUMERATED_RESETS:
        enumeration_error = trace_distance(enumerate_branches(layout, params, noise), exact)

    larger = samples_m * growth_factor
    errors, errors_larger = [], []
    std_error = 0.0
    for rep in range(repetitions):
        small, small_err = estimate_density(layout, params, noise, samples_m, _estimate_seed(seed, rep, 0))
        big, _ = estimate_density(layout, params, noise, larger, _estimate_seed(seed, rep, 1))
        if rep == 0:
            std_error = small_err
        errors.append(trace_distance(small, exact))
        errors_larger.append(trace_distance(big, exact))
        logger.debug(f"Repetition {rep}: error {errors[-1]:.4e} at M={samples_m}, {errors_larger[-1]:.4e} at M={larger}")

    median_error = float(np.median(errors))
    median_larger = float(np.median(errors_larger))
    report = ConvergenceReport(
        n=layout.n,
        depth_d=layout.depth_d,
        noisy=noise.enabled,
        samples=samples_m,
        larger_samples=larger,
        repetitions=repetitions,
        enumeration_error=enumeration_error,
        median_error=median_error,
        median_error_larger=median_larger,
        error_ratio=median_error / median_larger if median_larger > 0 else float("inf"),
        std_error=std_error,
    )
    logger.info(f"Trajectory validation n={layout.n} D={layout.depth_d}: error ratio {report.error_ratio:.3f}")
    return report


class TrajectoryValidationWorkflow:
    """Builds a random circuit instance and reports trajectory convergence."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the workflow.

        Args:
            config: Trajectories module config; loaded from config.yaml when None
        """
        self.config = config if config is not None else load_module_config("trajectories")
        self.growth_factor = int(config_section(self.config, "convergence").get("growth_factor", 4))

    def run(self, request: TrajectoryValidationRequest) -> ConvergenceReport:
        layout = build_layout(request.n, request.depth_d)
        if request.noise_rate is None:
            noise = NoiseModel.noiseless()
        else:
            noise = NoiseModel.uniform(request.n, request.noise_rate, request.noise_rate)
        params = init_parameters(layout, request.seed, p_cap=noise.reset_cap)
        return convergence_report(
            layout,
            params,
            noise,
            samples_m=request.samples,
            repetitions=request.repetitions,
            seed=request.seed,
            growth_factor=self.growth_factor,
        )

    async def execute(self, request: TrajectoryValidationRequest) -> ConvergenceReport:
        """Run the validation off the event loop."""
        return await asyncio.to_thread(self.run, request)
