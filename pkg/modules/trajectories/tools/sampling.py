"""
Pure-state trajectory sampling and exhaustive branch enumeration.
"""
import itertools
import logging
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from core.config_loader import config_section, load_module_config
from modules.ansatz.models.ansatz import AnsatzLayout, ParameterVector, ResetSlot
from modules.channels.models.channels import NoiseModel
from modules.channels.tools.channels import (
    amplitude_damping_kraus,
    dephasing_kraus,
    reset_kernel,
    su4_noisy_kernel,
)
from modules.channels.tools.gates import bloch_ket, bloch_projector, su4_matrix, su4_segments
from modules.qstate.models.qstate import DensityMatrix, PureState
from modules.qstate.tools.state_ops import basis_state
from modules.qstate.tools.tensor_ops import apply_to_vector
from modules.trajectories.models.trajectories import TrajectoryRecord

logger = logging.getLogger(__name__)

_sampling_config = config_section(load_module_config("trajectories"), "sampling")
DEFAULT_CHUNK_SIZE = int(_sampling_config.get("chunk_size", 1000))
MAX_ENUMERATED_RESETS = int(_sampling_config.get("max_enumerated_resets", 10))


@dataclass(frozen=True)
class UnitaryStep:
    op: np.ndarray
    targets: Tuple[int, ...]


@dataclass(frozen=True)
class KrausStep:
    ops: Tuple[np.ndarray, ...]
    qubit: int


@dataclass(frozen=True)
class ResetStep:
    qubit: int
    p: float
    target: np.ndarray


def compile_circuit(layout: AnsatzLayout, params: ParameterVector, noise: NoiseModel) -> List[object]:
    """
    Flatten the layout into unitary, Kraus and reset steps for the sampler.

    Two-qubit slots use the same three-CX segments as the density-matrix
    simulator when noise is enabled, and the dense gate otherwise.
    """
    if len(params) != layout.n_params:
        raise ValueError(f"parameter vector has {len(params)} entries, layout needs {layout.n_params}")
    noise.check_covers(layout.n)
    values = params.values
    steps: List[object] = []
    for slot in layout.gate_sequence:
        o = slot.offset
        if isinstance(slot, ResetSlot):
            p = min(max(float(values[o]), 0.0), noise.reset_cap)
            steps.append(ResetStep(slot.qubit, p, bloch_ket(values[o + 1], values[o + 2])))
            continue
        angles = values[o:o + slot.n_params]
        if not noise.enabled:
            steps.append(UnitaryStep(su4_matrix(angles), slot.pair))
            continue
        w0, w1, w2, w3 = su4_segments(angles)
        for segment in (w0, w1, w2):
            steps.append(UnitaryStep(segment, slot.pair))
            for q in slot.pair:
                steps.append(KrausStep(tuple(dephasing_kraus(noise.lambdas[q])), q))
                steps.append(KrausStep(tuple(amplitude_damping_kraus(noise.omegas[q])), q))
        steps.append(UnitaryStep(w3, slot.pair))
    return steps


def _measure(psi: np.ndarray, qubit: int, n: int, rng: np.random.Generator) -> Tuple[np.ndarray, int, float]:
    """Computational-basis measurement of one qubit; returns the collapsed state."""
    t = np.moveaxis(psi.reshape((2,) * n), qubit, 0)
    prob0 = float(np.sum(np.abs(t[0]) ** 2))
    outcome = 0 if rng.random() < prob0 else 1
    weight = prob0 if outcome == 0 else 1.0 - prob0
    collapsed = np.zeros_like(t)
    collapsed[outcome] = t[outcome] / np.sqrt(weight)
    return np.moveaxis(collapsed, 0, qubit).reshape(2 ** n), outcome, weight


def _sample_kraus(
    psi: np.ndarray, ops: Tuple[np.ndarray, ...], qubit: int, n: int, rng: np.random.Generator
) -> Tuple[np.ndarray, int, float]:
    branches = [apply_to_vector(psi, k_op, (qubit,), n) for k_op in ops]
    probs = np.array([np.vdot(b, b).real for b in branches])
    probs /= probs.sum()
    index = min(int(np.searchsorted(np.cumsum(probs), rng.random(), side="right")), len(ops) - 1)
    while probs[index] <= 0.0:
        index -= 1
    return branches[index] / np.sqrt(np.vdot(branches[index], branches[index]).real), index, float(probs[index])


def run_compiled(steps: List[object], n: int, rng: np.random.Generator, psi0: Optional[np.ndarray] = None) -> TrajectoryRecord:
    """Sample one trajectory through precompiled steps."""
    if psi0 is None:
        psi = np.zeros(2 ** n, dtype=np.complex128)
        psi[0] = 1.0
    else:
        psi = np.asarray(psi0, dtype=np.complex128)
    branches: List[bool] = []
    outcomes: List[int] = []
    kraus_indices: List[int] = []
    weights: List[float] = []
    for step in steps:
        if isinstance(step, UnitaryStep):
            psi = apply_to_vector(psi, step.op, step.targets, n)
        elif isinstance(step, KrausStep):
            psi, index, weight = _sample_kraus(psi, step.ops, step.qubit, n, rng)
            kraus_indices.append(index)
            weights.append(weight)
        else:
            fired = rng.random() < step.p
            branches.append(bool(fired))
            if not fired:
                continue
            psi, outcome, weight = _measure(psi, step.qubit, n, rng)
            outcomes.append(outcome)
            weights.append(weight)
            # |phi><m| on the measured qubit
            replace = np.zeros((2, 2), dtype=np.complex128)
            replace[:, outcome] = step.target
            psi = apply_to_vector(psi, replace, (step.qubit,), n)
    return TrajectoryRecord(
        branches=branches,
        outcomes=outcomes,
        kraus_indices=kraus_indices,
        weights=weights,
        final_state=PureState.from_array(psi, n_qubits=n),
    )


def sample_trajectory(
    layout: AnsatzLayout,
    params: ParameterVector,
    noise: NoiseModel,
    rng: np.random.Generator,
    psi0: Optional[np.ndarray] = None,
) -> TrajectoryRecord:
    """
    Sample one pure-state instance of the circuit.

    Each reset slot fires with its probability p; a fired reset measures the
    qubit, discards the outcome and prepares the target state. With noise
    enabled, every noise channel is unraveled by drawing one Kraus operator
    with its Born weight.

    Args:
        layout: Circuit layout
        params: Parameter vector matching the layout
        noise: Noise model
        rng: Random generator driving all choices
        psi0: Input state vector, |0...0> when omitted

    Returns:
        TrajectoryRecord with the normalized output state
    """
    return run_compiled(compile_circuit(layout, params, noise), layout.n, rng, psi0)


def trajectory_rng(seed: int, index: int) -> np.random.Generator:
    """Independent substream for trajectory `index` of a seeded estimate."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _chunk_moments(steps: List[object], n: int, seed: int, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray]:
    dim = 2 ** n
    total = np.zeros((dim, dim), dtype=np.complex128)
    total_sq = np.zeros((dim, dim), dtype=np.float64)
    for k in range(start, stop):
        psi = run_compiled(steps, n, trajectory_rng(seed, k)).final_state.amplitudes
        outer = np.outer(psi, psi.conj())
        total += outer
        total_sq += np.abs(outer) ** 2
    return total, total_sq


def estimate_density(
    layout: AnsatzLayout,
    params: ParameterVector,
    noise: NoiseModel,
    samples_m: int,
    seed: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    executor: Optional[Executor] = None,
) -> Tuple[DensityMatrix, float]:
    """
    Average M sampled pure states.

    Trajectory k draws from its own substream of `seed`, and chunk sums are
    reduced in chunk order, so the estimate does not depend on the executor.

    Args:
        layout: Circuit layout
        params: Parameter vector
        noise: Noise model
        samples_m: Number of trajectories, >= 1
        seed: Master seed
        chunk_size: Trajectories per reduction chunk
        executor: Optional executor for chunks

    Returns:
        Tuple of (estimated density matrix, Frobenius-norm standard error)
    """
    if samples_m < 1:
        raise ValueError(f"samples_m must be >= 1, got {samples_m}")
    steps = compile_circuit(layout, params, noise)
    n = layout.n
    bounds = [(s, min(s + chunk_size, samples_m)) for s in range(0, samples_m, chunk_size)]
    if executor is None:
        chunks = [_chunk_moments(steps, n, seed, a, b) for a, b in bounds]
    else:
        chunks = list(executor.map(_chunk_moments, *zip(*[(steps, n, seed, a, b) for a, b in bounds])))

    total = sum(c[0] for c in chunks)
    total_sq = sum(c[1] for c in chunks)
    mean = total / samples_m
    variance = np.clip(total_sq / samples_m - np.abs(mean) ** 2, 0.0, None)
    std_error = float(np.sqrt(variance.sum()) / np.sqrt(samples_m))
    mean = 0.5 * (mean + mean.conj().T)
    return DensityMatrix.from_array(mean, validate=False), std_error


def enumerate_branches(
    layout: AnsatzLayout,
    params: ParameterVector,
    noise: NoiseModel,
    rho0: Optional[DensityMatrix] = None,
) -> DensityMatrix:
    """
    Exact mixture over every fire/skip assignment of the reset slots.

    Each branch is evolved as a density matrix with its fired resets applied
    in full, and weighted by the product of p (fired) and 1 - p (skipped).
    """
    resets = layout.reset_slots
    if len(resets) > MAX_ENUMERATED_RESETS:
        raise ValueError(f"{len(resets)} reset slots exceed the enumeration limit of {MAX_ENUMERATED_RESETS}")
    if len(params) != layout.n_params:
        raise ValueError(f"parameter vector has {len(params)} entries, layout needs {layout.n_params}")
    noise.check_covers(layout.n)
    n = layout.n
    values = params.values
    data0 = (rho0 if rho0 is not None else basis_state(n)).data
    probs = [min(max(float(values[s.offset]), 0.0), noise.reset_cap) for s in resets]

    mixture = np.zeros_like(data0, dtype=np.complex128)
    for assignment in itertools.product((False, True), repeat=len(resets)):
        weight = float(np.prod([p if fired else 1.0 - p for p, fired in zip(probs, assignment)]))
        if weight == 0.0:
            continue
        fired_by_offset = {s.offset: fired for s, fired in zip(resets, assignment)}
        data = data0
        for slot in layout.gate_sequence:
            o = slot.offset
            if isinstance(slot, ResetSlot):
                if fired_by_offset[o]:
                    data = reset_kernel(data, slot.qubit, n, 1.0, bloch_projector(values[o + 1], values[o + 2]))
            else:
                data = su4_noisy_kernel(data, values[o:o + slot.n_params], slot.pair, n, noise)
        mixture += weight * data
    logger.debug(f"Enumerated {2 ** len(resets)} branches for n={n} D={layout.depth_d}")
    return DensityMatrix.from_array(mixture, validate=False)
