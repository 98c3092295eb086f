"""
Projected Adam update.
"""
from typing import Tuple

import numpy as np

from modules.ansatz.models.ansatz import ParameterVector
from modules.ansatz.tools.layout import project
from modules.optimize.models.optimize import AdamState


def adam_step(state: AdamState, params: ParameterVector, grad: np.ndarray) -> Tuple[AdamState, ParameterVector]:
    """
    One bias-corrected Adam update followed by projection onto the box.

    Args:
        state: Current optimizer state
        params: Current parameters
        grad: Loss gradient at `params`

    Returns:
        Tuple of (next state, next parameters)
    """
    grad = np.asarray(grad, dtype=np.float64)
    if not (grad.shape == state.m.shape == params.values.shape):
        raise ValueError(
            f"length mismatch: gradient {grad.size}, moments {state.m.size}, parameters {params.values.size}"
        )
    t = state.step + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grad
    v = state.beta2 * state.v + (1.0 - state.beta2) * grad * grad
    m_hat = m / (1.0 - state.beta1 ** t)
    v_hat = v / (1.0 - state.beta2 ** t)
    update = state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    next_state = state.model_copy(update={"step": t, "m": m, "v": v})
    return next_state, project(params, params.values - update)
