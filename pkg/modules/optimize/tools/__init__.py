"""
Loss, gradient and optimizer tools.
"""
from modules.optimize.tools.loss import LossEvaluator, infidelity, loss_value
from modules.optimize.tools.gradient import gradient, loss_and_gradient
from modules.optimize.tools.adam import adam_step

__all__ = [
    "LossEvaluator",
    "infidelity",
    "loss_value",
    "gradient",
    "loss_and_gradient",
    "adam_step",
]
