"""
Layout construction and parameter initialization.
"""
import logging
from typing import List, Tuple, Union

import numpy as np

from modules.ansatz.models.ansatz import RESET_PARAM_COUNT, AnsatzLayout, ParameterVector, ResetSlot, Su4Slot
from modules.channels.models.channels import SU4_ANGLE_COUNT

logger = logging.getLogger(__name__)


def ring_pairs(n: int) -> List[Tuple[int, int]]:
    """Even pairs (0,1),(2,3),... then odd pairs (1,2),...,(n-1,0)."""
    even = [(a, a + 1) for a in range(0, n, 2)]
    odd = [(a, (a + 1) % n) for a in range(1, n, 2)]
    return even + odd


def build_layout(n: int, depth_d: int) -> AnsatzLayout:
    """
    Build the brick-wall circuit on a ring of n qubits.

    Each of the depth_d dissipative layers holds n two-qubit gates followed by
    one reset gate per qubit; a final coherent layer holds n two-qubit gates.

    Args:
        n: Even number of qubits, >= 2
        depth_d: Number of dissipative layers, >= 0

    Returns:
        AnsatzLayout with (18 * depth_d + 15) * n parameters
    """
    if n < 2 or n % 2:
        raise ValueError(f"ring size must be even and >= 2, got n={n}")
    if depth_d < 0:
        raise ValueError(f"depth must be >= 0, got {depth_d}")

    slots = []
    offset = 0
    for layer in range(depth_d + 1):
        for pair in ring_pairs(n):
            slots.append(Su4Slot(pair=pair, offset=offset))
            offset += SU4_ANGLE_COUNT
        if layer == depth_d:
            break
        for qubit in range(n):
            slots.append(ResetSlot(qubit=qubit, offset=offset))
            offset += RESET_PARAM_COUNT

    layout = AnsatzLayout(n=n, depth_d=depth_d, gate_sequence=slots)
    logger.debug(f"Built layout n={n} D={depth_d}: {len(slots)} slots, {layout.n_params} parameters")
    return layout


def parameter_bounds(layout: AnsatzLayout, p_cap: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """Lower/upper bound arrays: infinite for angles, [0, p_cap] for probabilities."""
    if not 0.0 < p_cap <= 1.0:
        raise ValueError(f"p_cap={p_cap} outside (0, 1]")
    lower = np.full(layout.n_params, -np.inf)
    upper = np.full(layout.n_params, np.inf)
    idx = layout.probability_indices()
    lower[idx] = 0.0
    upper[idx] = p_cap
    return lower, upper


def wrap_angles(values: np.ndarray) -> np.ndarray:
    """Map angles to (-pi, pi]; entries already inside are returned untouched."""
    values = np.asarray(values, dtype=np.float64)
    outside = (values > np.pi) | (values <= -np.pi)
    return np.where(outside, np.pi - np.mod(np.pi - values, 2.0 * np.pi), values)


def project(params: ParameterVector, values: np.ndarray) -> ParameterVector:
    """Wrap periodic entries and clip bounded entries of `values` into `params`' box."""
    values = np.asarray(values, dtype=np.float64)
    periodic = params.periodic_mask
    out = np.where(periodic, wrap_angles(values), np.clip(values, params.lower, params.upper))
    return params.with_values(out)


def init_parameters(
    layout: AnsatzLayout,
    rng_seed: Union[int, np.random.SeedSequence],
    p_cap: float = 1.0,
) -> ParameterVector:
    """
    Draw a random starting point.

    Angles are uniform in [-pi, pi), probabilities uniform in [0, 1] and then
    clamped to p_cap.

    Args:
        layout: Circuit layout
        rng_seed: Seed (or SeedSequence entropy) for numpy's default generator
        p_cap: Upper bound on reset probabilities

    Returns:
        ParameterVector with bounds attached
    """
    rng = np.random.default_rng(rng_seed)
    values = rng.uniform(-np.pi, np.pi, size=layout.n_params)
    idx = layout.probability_indices()
    values[idx] = np.minimum(rng.uniform(0.0, 1.0, size=idx.size), p_cap)
    lower, upper = parameter_bounds(layout, p_cap)
    return ParameterVector(values=values, lower=lower, upper=upper)
