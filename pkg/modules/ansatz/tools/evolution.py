"""
Density-matrix evolution through a circuit layout.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from modules.ansatz.models.ansatz import AnsatzLayout, ParameterVector, ResetSlot, Su4Slot
from modules.channels.models.channels import NoiseModel
from modules.channels.tools.channels import cx_noise_superop, reset_superop, su4_superop
from modules.channels.tools.gates import bloch_projector
from modules.qstate.models.qstate import DensityMatrix
from modules.qstate.tools.state_ops import basis_state
from modules.qstate.tools.tensor_ops import apply_superop

logger = logging.getLogger(__name__)


class CircuitEvolver:
    """
    Applies the slots of a layout to raw density-matrix arrays.

    Every slot is a local map stored as a superoperator. `slot_maps` builds
    them once per parameter vector; `forward` keeps the state in front of
    every slot, so a caller that changes parameters of slot k can `resume`
    from there, rebuilding only slot k's map.
    """

    def __init__(self, layout: AnsatzLayout, noise: NoiseModel):
        noise.check_covers(layout.n)
        self.layout = layout
        self.noise = noise
        self.n = layout.n
        self.slots = list(layout.gate_sequence)
        self.p_cap = noise.reset_cap
        self.owner = layout.slot_index_of_parameter()
        self.targets = [(slot.qubit,) if isinstance(slot, ResetSlot) else slot.pair for slot in self.slots]
        self.noise_maps: Dict[Tuple[int, int], np.ndarray] = {}
        if noise.enabled:
            for slot in self.slots:
                if isinstance(slot, Su4Slot) and slot.pair not in self.noise_maps:
                    self.noise_maps[slot.pair] = cx_noise_superop(slot.pair, noise)
        logger.debug(f"Evolver n={self.n}: {len(self.slots)} slots, noise {'on' if noise.enabled else 'off'}")

    def check_length(self, values: np.ndarray) -> None:
        if values.shape != (self.layout.n_params,):
            raise ValueError(f"parameter vector has {values.size} entries, layout needs {self.layout.n_params}")

    def slot_map(self, k: int, values: np.ndarray) -> Optional[np.ndarray]:
        """Superoperator of slot k, or None for a reset with p = 0."""
        slot = self.slots[k]
        o = slot.offset
        if isinstance(slot, ResetSlot):
            p = min(max(float(values[o]), 0.0), self.p_cap)
            if p == 0.0:
                return None
            return reset_superop(p, bloch_projector(values[o + 1], values[o + 2]))
        return su4_superop(values[o:o + slot.n_params], self.noise_maps.get(slot.pair))

    def slot_maps(self, values: np.ndarray) -> List[Optional[np.ndarray]]:
        self.check_length(values)
        return [self.slot_map(k, values) for k in range(len(self.slots))]

    def apply_map(self, data: np.ndarray, k: int, superop: Optional[np.ndarray]) -> np.ndarray:
        if superop is None:
            return data
        return apply_superop(data, superop, self.targets[k], self.n)

    def resume(
        self,
        data: np.ndarray,
        values: np.ndarray,
        start: int = 0,
        maps: Optional[List[Optional[np.ndarray]]] = None,
    ) -> np.ndarray:
        """
        Apply slots start.. to `data`.

        With `maps` given, slots after `start` reuse them and only slot
        `start` is rebuilt from `values`.
        """
        for k in range(start, len(self.slots)):
            superop = maps[k] if maps is not None and k != start else self.slot_map(k, values)
            data = self.apply_map(data, k, superop)
        return data

    def forward(
        self,
        rho0: np.ndarray,
        values: np.ndarray,
        maps: Optional[List[Optional[np.ndarray]]] = None,
    ) -> List[np.ndarray]:
        """States before each slot, with the circuit output appended last."""
        if maps is None:
            maps = self.slot_maps(values)
        states = [rho0]
        for k, superop in enumerate(maps):
            states.append(self.apply_map(states[-1], k, superop))
        return states

    def run(self, rho0: np.ndarray, values: np.ndarray) -> np.ndarray:
        self.check_length(values)
        return self.resume(rho0, values)


def evolve(
    layout: AnsatzLayout,
    params: ParameterVector,
    noise: NoiseModel,
    rho0: Optional[DensityMatrix] = None,
) -> DensityMatrix:
    """
    Evolve an input state through the circuit.

    Two-qubit slots run with hardware noise when the model is enabled; reset
    probabilities are clipped to [0, p*] (or [0, 1] without noise).

    Args:
        layout: Circuit layout
        params: Parameter vector matching the layout
        noise: Noise model
        rho0: Input state, defaults to |0...0><0...0|

    Returns:
        Output density matrix
    """
    if rho0 is None:
        rho0 = basis_state(layout.n)
    if rho0.n_qubits != layout.n:
        raise ValueError(f"input state has {rho0.n_qubits} qubits, layout has {layout.n}")
    evolver = CircuitEvolver(layout, noise)
    out = evolver.run(rho0.data, params.values)
    return DensityMatrix.from_array(out)
