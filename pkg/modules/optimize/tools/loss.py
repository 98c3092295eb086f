"""
Loss functions between the circuit output and the Gibbs target.
"""
from typing import List, Optional

import numpy as np

from modules.ansatz.models.ansatz import ParameterVector
from modules.ansatz.tools.evolution import CircuitEvolver
from modules.optimize.models.optimize import LossContext
from modules.qstate.tools.state_ops import fidelity_from_sqrts, psd_sqrt


class LossEvaluator:
    """
    Loss of a fixed context as a function of raw parameter values.

    The square root of the target is computed once; evaluations reuse it.
    """

    def __init__(self, ctx: LossContext):
        self.ctx = ctx
        self.evolver = CircuitEvolver(ctx.layout, ctx.noise)
        self.rho0 = ctx.rho0.data
        self.target = ctx.target.state.data
        self.sqrt_target = psd_sqrt(self.target)

    def fidelity_of(self, data: np.ndarray) -> float:
        return fidelity_from_sqrts(self.sqrt_target, psd_sqrt(data))

    def loss_of(self, data: np.ndarray) -> float:
        """Loss of an output state; both measures lie in [0, 1]."""
        if self.ctx.loss == "half_trace_distance":
            diff = data - self.target
            eig = np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))
            return min(0.5 * float(np.sum(np.abs(eig))), 1.0)
        return 1.0 - self.fidelity_of(data)

    def slot_maps(self, values: np.ndarray) -> List[Optional[np.ndarray]]:
        return self.evolver.slot_maps(values)

    def forward(self, values: np.ndarray, maps: Optional[List[Optional[np.ndarray]]] = None) -> List[np.ndarray]:
        return self.evolver.forward(self.rho0, values, maps)

    def output(self, values: np.ndarray) -> np.ndarray:
        return self.evolver.run(self.rho0, values)

    def value(self, values: np.ndarray) -> float:
        return self.loss_of(self.output(values))


def infidelity(ctx: LossContext, params: ParameterVector) -> float:
    """1 - F(evolve(params), target)."""
    evaluator = LossEvaluator(ctx.model_copy(update={"loss": "infidelity"}))
    return evaluator.value(params.values)


def loss_value(ctx: LossContext, params: ParameterVector) -> float:
    """Loss selected by the context."""
    return LossEvaluator(ctx).value(params.values)
