"""
Closed-form toy-model pipeline: U, depolarize, reset, depolarize.
"""
import logging
from typing import List, Sequence

import numpy as np

from modules.channels.models.channels import BlochAngles, ResetGateParams
from modules.channels.tools.channels import apply_local_unitary, depolarizing_channel, reset_channel
from modules.channels.tools.gates import X, Y, Z
from modules.qstate.models.qstate import DensityMatrix
from modules.toymodel.models.toymodel import ResetProbability, ToyScenario, ToyTableRow

logger = logging.getLogger(__name__)

PAULIS = (X, Y, Z)
FEASIBILITY_TOL = 1e-12


def _check_inputs(r: float, lam: float) -> None:
    if not 0.0 < r <= 1.0:
        raise ValueError(f"radius must be in (0, 1], got {r}")
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"lambda must be in [0, 1), got {lam}")


def bloch_rotation(u: np.ndarray) -> np.ndarray:
    """SO(3) matrix R with U (n . sigma) U^dagger = (R n) . sigma."""
    return np.array(
        [[0.5 * np.real(np.trace(a @ u @ b @ u.conj().T)) for b in PAULIS] for a in PAULIS]
    )


def state_from_bloch(vector: Sequence[float]) -> DensityMatrix:
    rx, ry, rz = vector
    return DensityMatrix.from_array(0.5 * (np.eye(2) + rx * X + ry * Y + rz * Z))


def bloch_angles_of(vector: Sequence[float]) -> BlochAngles:
    x, y, z = vector
    return BlochAngles(theta=float(np.arccos(np.clip(z, -1.0, 1.0))), varphi=float(np.arctan2(y, x)))


def output_radius(r: float, lam: float, p: float) -> float:
    return (1.0 - lam) * ((1.0 - p) * (1.0 - lam) * r + p)


def optimal_reset_probability(r: float, lam: float) -> ResetProbability:
    """
    Reset probability that restores the input Bloch radius after two
    depolarizing steps.

    Exact cancellation is possible iff lam <= 1 - r; otherwise p = 1 is the
    best choice and the residual trace distance is reported.

    Args:
        r: Bloch radius, 0 < r <= 1
        lam: Depolarizing rate, 0 <= lam < 1

    Returns:
        ResetProbability
    """
    _check_inputs(r, lam)
    keep = 1.0 - lam
    if lam <= 1.0 - r + FEASIBILITY_TOL:
        p = (1.0 / keep - keep) / (1.0 / r - keep) if r < 1.0 else 0.0
        p = min(max(p, 0.0), 1.0)
        return ResetProbability(feasible=True, p=p, residual=abs(output_radius(r, lam, p) - r))
    return ResetProbability(feasible=False, p=1.0, residual=abs(output_radius(r, lam, 1.0) - r))


def rotated_direction(s: ToyScenario) -> np.ndarray:
    return bloch_rotation(s.unitary) @ np.asarray(s.direction)


def ideal_output_state(s: ToyScenario) -> DensityMatrix:
    """U rho0 U^dagger."""
    return state_from_bloch(s.radius * rotated_direction(s))


def toy_output_state(s: ToyScenario, p: float) -> DensityMatrix:
    """Closed-form output of the noisy pipeline with reset target along U r-hat."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    return state_from_bloch(output_radius(s.radius, s.lam, p) * rotated_direction(s))


def toy_pipeline_via_channels(s: ToyScenario, p: float) -> DensityMatrix:
    """The same pipeline evaluated with the channel primitives."""
    rho = state_from_bloch(s.radius * np.asarray(s.direction))
    rho = apply_local_unitary(rho, s.unitary, [0])
    rho = depolarizing_channel(rho, s.lam)
    gate = ResetGateParams(p=p, target=bloch_angles_of(rotated_direction(s)))
    rho = reset_channel(rho, 0, gate)
    return depolarizing_channel(rho, s.lam)


def toy_table(lambdas: Sequence[float], radii: Sequence[float]) -> List[ToyTableRow]:
    """Optimal reset probability over a (rate, radius) grid, rates outermost."""
    rows = []
    for lam in lambdas:
        for r in radii:
            best = optimal_reset_probability(r, lam)
            rows.append(ToyTableRow(lam=lam, radius=r, p=best.p, feasible=best.feasible, residual=best.residual))
    logger.info(f"Toy table: {len(rows)} rows, {sum(row.feasible for row in rows)} feasible")
    return rows
