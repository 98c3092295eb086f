"""
Finite-difference gradients of the loss.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from modules.ansatz.models.ansatz import ParameterVector
from modules.optimize.models.optimize import GradientScheme, LossContext
from modules.optimize.tools.loss import LossEvaluator

logger = logging.getLogger(__name__)


def loss_and_gradient(
    evaluator: LossEvaluator,
    params: ParameterVector,
    scheme: Optional[GradientScheme] = None,
) -> Tuple[float, np.ndarray]:
    """
    Loss at `params` and its finite-difference gradient.

    A perturbation of parameter k only rebuilds the map of the slot that reads
    it and replays the circuit from the cached state in front of that slot.
    Probability entries closer than h to a bound fall back to a one-sided
    difference that stays inside the box.

    Args:
        evaluator: Loss evaluator for the context
        params: Point of evaluation
        scheme: Difference scheme, central with h = 1e-4 by default

    Returns:
        Tuple of (loss, gradient)
    """
    scheme = scheme or GradientScheme()
    h = scheme.step
    values = np.array(params.values, dtype=np.float64)
    maps = evaluator.slot_maps(values)
    states = evaluator.forward(values, maps)
    f0 = evaluator.loss_of(states[-1])
    owner = evaluator.evolver.owner
    resume = evaluator.evolver.resume
    bounded = ~params.periodic_mask

    def shifted(k: int, delta: float) -> float:
        perturbed = values.copy()
        perturbed[k] += delta
        return evaluator.loss_of(resume(states[owner[k]], perturbed, owner[k], maps))

    grad = np.zeros(values.size)
    for k in range(values.size):
        room_up = not bounded[k] or values[k] + h <= params.upper[k]
        room_down = not bounded[k] or values[k] - h >= params.lower[k]
        if scheme.scheme == "central" and room_up and room_down:
            grad[k] = (shifted(k, h) - shifted(k, -h)) / (2.0 * h)
        elif room_up:
            grad[k] = (shifted(k, h) - f0) / h
        else:
            logger.debug(f"Parameter {k} at upper bound, using backward difference")
            grad[k] = (f0 - shifted(k, -h)) / h
    return f0, grad


def gradient(ctx: LossContext, params: ParameterVector, scheme: Optional[GradientScheme] = None) -> np.ndarray:
    """Finite-difference gradient of the context's loss at `params`."""
    _, grad = loss_and_gradient(LossEvaluator(ctx), params, scheme)
    return grad
