"""
Seeded optimization runs and best-of-k restarts.
"""
import logging
import math
import time
from concurrent.futures import Executor
from functools import partial
from typing import List, Optional, Sequence

import numpy as np

from modules.ansatz.tools.layout import init_parameters
from modules.optimize.models.optimize import AdamState, LossContext, OptimizerSettings, RunRecord
from modules.optimize.tools.adam import adam_step
from modules.optimize.tools.gradient import loss_and_gradient
from modules.optimize.tools.loss import LossEvaluator
from modules.qstate.models.qstate import DensityMatrix
from modules.qstate.tools.state_ops import relative_entropy

logger = logging.getLogger(__name__)


def _config_snapshot(ctx: LossContext, settings: OptimizerSettings) -> dict:
    return {
        "model": ctx.target.hamiltonian.descriptor.label,
        "n": ctx.layout.n,
        "D": ctx.layout.depth_d,
        "beta": ctx.target.beta,
        "noisy": ctx.noise.enabled,
        "settings": settings.model_dump(),
    }


def optimize_run(
    ctx: LossContext,
    seed: int,
    max_steps: Optional[int] = None,
    loss_stop: Optional[float] = None,
    settings: Optional[OptimizerSettings] = None,
    record_wall_time: bool = True,
) -> RunRecord:
    """
    Minimize the loss from a seeded random start with projected Adam.

    The loss is recorded before every update. The run stops as soon as the
    loss drops below `loss_stop`; after `max_steps` updates the loss at the
    final parameters is appended so the trace always ends at the returned point.

    Args:
        ctx: Loss context
        seed: Seed for init_parameters
        max_steps: Maximum number of Adam updates, overriding settings
        loss_stop: Loss threshold, overriding settings
        settings: Optimizer settings, loaded from config.yaml when None
        record_wall_time: Record 0.0 instead of the measured duration when False

    Returns:
        RunRecord of the run
    """
    settings = settings or OptimizerSettings.from_config()
    overrides = {k: v for k, v in (("max_steps", max_steps), ("loss_stop", loss_stop)) if v is not None}
    if overrides:
        settings = settings.model_copy(update=overrides)
    if settings.loss != ctx.loss:
        ctx = ctx.model_copy(update={"loss": settings.loss})

    start = time.perf_counter()
    evaluator = LossEvaluator(ctx)
    params = init_parameters(ctx.layout, seed, p_cap=ctx.noise.reset_cap)
    adam = AdamState.initial(len(params), settings.adam)
    trace: List[float] = []
    termination = "max_steps"

    logger.info(
        f"Starting run seed={seed} n={ctx.layout.n} D={ctx.layout.depth_d} "
        f"beta={ctx.target.beta} noisy={ctx.noise.enabled} params={len(params)}"
    )
    for step in range(settings.max_steps):
        loss, grad = loss_and_gradient(evaluator, params, settings.gradient)
        trace.append(loss)
        if step % settings.log_every == 0:
            logger.debug(f"seed={seed} step={step} loss={loss:.6e}")
        if loss < settings.loss_stop:
            termination = "loss_threshold"
            break
        adam, params = adam_step(adam, params, grad)
    else:
        trace.append(evaluator.value(params.values))

    output = evaluator.output(params.values)
    fidelity = evaluator.fidelity_of(output)
    entropy = relative_entropy(DensityMatrix.from_array(output, validate=False), ctx.target.state)
    elapsed = time.perf_counter() - start

    if termination == "max_steps" and trace[-1] >= settings.loss_stop:
        logger.warning(f"Run seed={seed} hit max_steps={settings.max_steps} with loss {trace[-1]:.3e}")
    logger.info(f"Finished run seed={seed}: steps={adam.step} termination={termination} fidelity={fidelity:.6f}")

    return RunRecord(
        config=_config_snapshot(ctx, settings),
        seed=int(seed),
        loss_trace=trace,
        final_params=params.values.tolist(),
        final_fidelity=fidelity,
        final_relative_entropy=entropy if math.isfinite(entropy) else None,
        termination=termination,
        steps=adam.step,
        wall_seconds=elapsed if record_wall_time else 0.0,
        noise=ctx.noise,
    )


def run_restarts(
    ctx: LossContext,
    seeds: Sequence[int],
    executor: Optional[Executor] = None,
    **run_kwargs,
) -> List[RunRecord]:
    """Run optimize_run once per seed, in seed order, optionally on an executor."""
    run = partial(optimize_run, ctx, **run_kwargs)
    if executor is None:
        return [run(seed) for seed in seeds]
    return list(executor.map(run, seeds))


def select_best(records: Sequence[RunRecord]) -> RunRecord:
    """Record with maximal final fidelity; the earliest wins ties."""
    if not records:
        raise ValueError("no run records to select from")
    return records[int(np.argmax([r.final_fidelity for r in records]))]


def best_of(
    ctx: LossContext,
    restarts: int,
    seeds: Sequence[int],
    executor: Optional[Executor] = None,
    **run_kwargs,
) -> RunRecord:
    """
    Best of `restarts` independently seeded runs.

    Args:
        ctx: Loss context shared by all restarts
        restarts: Number of runs, >= 1
        seeds: At least `restarts` seeds; the first `restarts` are used
        executor: Optional executor for concurrent restarts

    Returns:
        RunRecord with the highest final fidelity
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    if len(seeds) < restarts:
        raise ValueError(f"{restarts} restarts need as many seeds, got {len(seeds)}")
    records = run_restarts(ctx, list(seeds)[:restarts], executor=executor, **run_kwargs)
    return select_best(records)
