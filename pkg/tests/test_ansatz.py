"""
Tests for the ring layout, parameter handling and density-matrix evolution.
"""
import numpy as np
import pytest
from pydantic import ValidationError

from modules.ansatz.models import AnsatzLayout, ParameterVector, ResetSlot, Su4Slot
from modules.ansatz.tools import (
    CircuitEvolver,
    build_layout,
    evolve,
    init_parameters,
    parameter_bounds,
    project,
    ring_pairs,
    wrap_angles,
)
from modules.channels.models import NoiseModel
from modules.channels.tools import apply_local_unitary, su4_matrix
from modules.qstate.models import DensityMatrix
from modules.qstate.tools import basis_state, uhlmann_fidelity

NOISY4 = NoiseModel.uniform(4, 0.01, 0.02)


def random_density(n, seed):
    rng = np.random.default_rng(seed)
    dim = 2 ** n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return DensityMatrix.from_array(rho / np.trace(rho))


def zero_parameters(layout, p=0.0, p_cap=1.0):
    """All angles zero, all reset probabilities p."""
    values = np.zeros(layout.n_params)
    values[layout.probability_indices()] = p
    lower, upper = parameter_bounds(layout, p_cap)
    return ParameterVector(values=values, lower=lower, upper=upper)


class TestRingPairs:
    def test_four_qubits(self):
        assert ring_pairs(4) == [(0, 1), (2, 3), (1, 2), (3, 0)]

    def test_two_qubits_wrap(self):
        """On two qubits the odd sublayer acts on the reversed pair."""
        assert ring_pairs(2) == [(0, 1), (1, 0)]


class TestBuildLayout:
    """Slot structure and parameter counts."""

    def test_four_qubits_depth_four(self):
        assert build_layout(4, 4).n_params == 348

    def test_depth_zero(self):
        layout = build_layout(2, 0)
        assert layout.n_params == 30
        assert sum(isinstance(s, Su4Slot) for s in layout.gate_sequence) == 2
        assert layout.reset_slots == []

    def test_six_qubits(self):
        assert build_layout(6, 6).n_params == 738

    @pytest.mark.parametrize("n", [2, 4, 6])
    @pytest.mark.parametrize("depth_d", range(9))
    def test_counts_over_grid(self, n, depth_d):
        layout = build_layout(n, depth_d)
        assert layout.n_params == (18 * depth_d + 15) * n
        assert len(layout.reset_slots) == depth_d * n
        assert len(layout.gate_sequence) == (2 * depth_d + 1) * n
        assert layout.probability_mask().sum() == depth_d * n

    def test_layer_order(self):
        """Each dissipative layer is n gates then n resets; the last layer is coherent."""
        kinds = [slot.kind for slot in build_layout(2, 2).gate_sequence]
        assert kinds == ["su4", "su4", "reset", "reset"] * 2 + ["su4", "su4"]

    def test_offsets_are_contiguous(self):
        layout = build_layout(4, 2)
        owners = layout.slot_index_of_parameter()
        assert owners[0] == 0 and owners[-1] == len(layout.gate_sequence) - 1
        assert np.all(np.diff(owners) >= 0)

    @pytest.mark.parametrize("n, depth_d", [(3, 1), (0, 1), (4, -1)])
    def test_rejects_bad_sizes(self, n, depth_d):
        with pytest.raises(ValueError):
            build_layout(n, depth_d)

    def test_rejects_gapped_offsets(self):
        with pytest.raises(ValidationError):
            AnsatzLayout(
                n=2,
                depth_d=0,
                gate_sequence=[Su4Slot(pair=(0, 1), offset=0), Su4Slot(pair=(1, 0), offset=16)],
            )

    def test_slots_round_trip_through_json(self):
        layout = build_layout(2, 1)
        again = AnsatzLayout.model_validate_json(layout.model_dump_json())
        assert again == layout
        assert isinstance(again.gate_sequence[2], ResetSlot)


class TestParameters:
    """Bounds, wrapping and initialization."""

    def test_bounds(self):
        layout = build_layout(2, 1)
        lower, upper = parameter_bounds(layout, 0.99)
        idx = layout.probability_indices()
        assert np.all(lower[idx] == 0.0) and np.all(upper[idx] == 0.99)
        assert np.all(np.isinf(np.delete(lower, idx)))

    def test_rejects_out_of_bound_probability(self):
        layout = build_layout(2, 1)
        lower, upper = parameter_bounds(layout, 0.5)
        values = np.zeros(layout.n_params)
        values[layout.probability_indices()[0]] = 0.7
        with pytest.raises(ValidationError):
            ParameterVector(values=values, lower=lower, upper=upper)

    def test_wrap_keeps_in_range_values(self):
        values = np.array([0.0, 1.0, -3.0, np.pi])
        np.testing.assert_array_equal(wrap_angles(values), values)

    def test_wrap_out_of_range(self):
        wrapped = wrap_angles(np.array([4.0, -4.0, -np.pi, 10.0]))
        np.testing.assert_allclose(wrapped, [4.0 - 2 * np.pi, 2 * np.pi - 4.0, np.pi, 10.0 - 4 * np.pi], atol=1e-12)

    def test_project(self):
        layout = build_layout(2, 1)
        params = zero_parameters(layout, p_cap=0.99)
        values = np.full(layout.n_params, 5.0)
        projected = project(params, values).values
        idx = layout.probability_indices()
        np.testing.assert_allclose(projected[idx], 0.99)
        np.testing.assert_allclose(np.delete(projected, idx), 5.0 - 2 * np.pi)

    def test_init_is_deterministic(self):
        layout = build_layout(4, 2)
        assert init_parameters(layout, 7) == init_parameters(layout, 7)
        assert init_parameters(layout, 7) != init_parameters(layout, 8)

    def test_init_ranges(self):
        layout = build_layout(4, 3)
        params = init_parameters(layout, 3, p_cap=0.99)
        mask = layout.probability_mask()
        assert np.all((params.values[mask] >= 0.0) & (params.values[mask] <= 0.99))
        assert np.all((params.values[~mask] >= -np.pi) & (params.values[~mask] < np.pi))
        assert len(params) == layout.n_params


class TestEvolve:
    """Evolution of density matrices through the layout."""

    def test_identity_circuit(self):
        """Zero angles and zero reset probabilities leave any state unchanged."""
        layout = build_layout(4, 2)
        rho = random_density(4, 1)
        out = evolve(layout, zero_parameters(layout), NoiseModel.noiseless(), rho)
        np.testing.assert_allclose(out.data, rho.data, atol=1e-10)

    def test_full_reset_forgets_input(self):
        layout = build_layout(4, 1)
        out = evolve(layout, zero_parameters(layout, p=1.0), NoiseModel.noiseless(), random_density(4, 2))
        np.testing.assert_allclose(out.data, basis_state(4, 0).data, atol=1e-10)

    def test_matches_gate_by_gate_application(self):
        layout = build_layout(2, 0)
        values = np.random.default_rng(3).uniform(-np.pi, np.pi, layout.n_params)
        lower, upper = parameter_bounds(layout)
        params = ParameterVector(values=values, lower=lower, upper=upper)
        rho = random_density(2, 4)
        expected = apply_local_unitary(rho, su4_matrix(values[:15]), [0, 1])
        expected = apply_local_unitary(expected, su4_matrix(values[15:]), [1, 0])
        out = evolve(layout, params, NoiseModel.noiseless(), rho)
        np.testing.assert_allclose(out.data, expected.data, atol=1e-10)

    def test_noisy_output_is_valid_state(self):
        layout = build_layout(4, 2)
        params = init_parameters(layout, 5, p_cap=NOISY4.reset_cap)
        out = evolve(layout, params, NOISY4)
        assert np.trace(out.data).real == pytest.approx(1.0)
        assert out.purity() < 1.0

    def test_affine_in_reset_probability(self):
        layout = build_layout(4, 1)
        base = init_parameters(layout, 6, p_cap=NOISY4.reset_cap)
        k = layout.probability_indices()[2]

        def output(p):
            values = base.values.copy()
            values[k] = p
            return evolve(layout, base.with_values(values), NOISY4).data

        np.testing.assert_allclose(output(0.4), 0.5 * (output(0.0) + output(0.8)), atol=1e-10)

    def test_probability_clipped_to_cap(self):
        """Under noise a reset probability of 1 acts as p* = 0.99."""
        layout = build_layout(2, 1)
        noise = NoiseModel.uniform(2, 0.0, 0.0)
        over = evolve(layout, zero_parameters(layout, p=1.0), noise, random_density(2, 7))
        capped = evolve(layout, zero_parameters(layout, p=0.99), noise, random_density(2, 7))
        np.testing.assert_allclose(over.data, capped.data, atol=1e-12)
        assert uhlmann_fidelity(over, basis_state(2, 0)) < 1.0

    def test_rejects_mismatched_input(self):
        layout = build_layout(2, 0)
        with pytest.raises(ValueError):
            evolve(layout, zero_parameters(layout), NoiseModel.noiseless(), basis_state(4, 0))

    def test_rejects_wrong_parameter_count(self):
        layout = build_layout(2, 0)
        other = zero_parameters(build_layout(2, 1))
        with pytest.raises(ValueError):
            evolve(layout, other, NoiseModel.noiseless())


class TestCircuitEvolver:
    def test_resume_matches_run(self):
        """Replaying from any cached intermediate state reproduces the output."""
        layout = build_layout(2, 2)
        noise = NoiseModel.uniform(2, 0.01, 0.01)
        values = init_parameters(layout, 8, p_cap=noise.reset_cap).values
        evolver = CircuitEvolver(layout, noise)
        rho0 = basis_state(2, 0).data
        states = evolver.forward(rho0, values)
        assert len(states) == len(layout.gate_sequence) + 1
        for k in (0, 3, len(layout.gate_sequence) - 1):
            np.testing.assert_allclose(evolver.resume(states[k], values, k), states[-1], atol=1e-12)
        np.testing.assert_allclose(evolver.run(rho0, values), states[-1], atol=1e-12)

    def test_cached_maps_rebuild_only_the_changed_slot(self):
        """After changing one parameter, replaying with cached maps equals a fresh run."""
        layout = build_layout(4, 1)
        noise = NoiseModel.uniform(4, 0.01, 0.02)
        values = init_parameters(layout, 9, p_cap=noise.reset_cap).values
        evolver = CircuitEvolver(layout, noise)
        rho0 = basis_state(4, 0).data
        maps = evolver.slot_maps(values)
        states = evolver.forward(rho0, values, maps)
        for k in (0, 20, int(layout.probability_indices()[2]), layout.n_params - 1):
            changed = values.copy()
            changed[k] += 0.3
            slot = evolver.owner[k]
            np.testing.assert_allclose(
                evolver.resume(states[slot], changed, slot, maps), evolver.run(rho0, changed), atol=1e-12
            )

    def test_inactive_reset_is_skipped(self):
        layout = build_layout(2, 1)
        evolver = CircuitEvolver(layout, NoiseModel.noiseless())
        values = zero_parameters(layout).values
        for k, slot in enumerate(layout.gate_sequence):
            assert (evolver.slot_map(k, values) is None) == isinstance(slot, ResetSlot)

    def test_requires_noise_for_every_qubit(self):
        with pytest.raises(ValueError):
            CircuitEvolver(build_layout(4, 1), NoiseModel.uniform(2, 0.01, 0.01))
