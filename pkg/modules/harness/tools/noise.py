"""
Noise-model sampling.
"""
from typing import Sequence

import numpy as np

from modules.channels.models.channels import DEFAULT_P_STAR, NoiseModel


def sample_noise_model(
    n: int,
    rate_range: Sequence[float],
    rng: np.random.Generator,
    p_star: float = DEFAULT_P_STAR,
) -> NoiseModel:
    """
    Draw per-qubit dephasing and damping rates uniformly from [lo, hi].

    Args:
        n: Number of qubits
        rate_range: (lo, hi) with 0 <= lo <= hi <= 1
        rng: Random generator
        p_star: Reset probability cap

    Returns:
        Enabled NoiseModel with 2n rates
    """
    lo, hi = rate_range
    if not 0.0 <= lo <= hi <= 1.0:
        raise ValueError(f"rate range ({lo}, {hi}) must satisfy 0 <= lo <= hi <= 1")
    lambdas = rng.uniform(lo, hi, size=n)
    omegas = rng.uniform(lo, hi, size=n)
    return NoiseModel(lambdas=lambdas.tolist(), omegas=omegas.tolist(), p_star=p_star)
