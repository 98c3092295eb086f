"""
Tests for the loss, finite-difference gradients, projected Adam and the run loop.
"""
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from pydantic import ValidationError

from modules.ansatz.models import ParameterVector
from modules.ansatz.tools import build_layout, evolve, init_parameters, parameter_bounds
from modules.channels.models import NoiseModel
from modules.hamiltonians.tools import gibbs_state, tfi_hamiltonian
from modules.optimize.models import AdamState, GradientScheme, LossContext, OptimizerSettings
from modules.optimize.tools import LossEvaluator, adam_step, gradient, infidelity, loss_and_gradient, loss_value
from modules.optimize.workflows import best_of, optimize_run, run_restarts, select_best
from modules.qstate.tools import basis_state, trace_distance, uhlmann_fidelity

NOISE2 = NoiseModel.uniform(2, 0.01, 0.02)


def make_context(depth_d=1, noise=NOISE2, beta=1.0, loss="infidelity"):
    target = gibbs_state(tfi_hamiltonian(2, 1.0), beta)
    return LossContext(layout=build_layout(2, depth_d), noise=noise, target=target, loss=loss)


def angle_params(values):
    values = np.asarray(values, dtype=float)
    return ParameterVector(values=values, lower=np.full(values.size, -np.inf), upper=np.full(values.size, np.inf))


def richardson(ctx, params, k, h=1e-3):
    """Fourth-order central estimate of d loss / d params[k]."""

    def central(step):
        up, down = params.values.copy(), params.values.copy()
        up[k] += step
        down[k] -= step
        return (loss_value(ctx, params.with_values(up)) - loss_value(ctx, params.with_values(down))) / (2 * step)

    return (4 * central(h / 2) - central(h)) / 3


class TestSettings:
    def test_defaults_from_config(self):
        settings = OptimizerSettings.from_config()
        assert settings.adam.lr == pytest.approx(0.02)
        assert settings.adam.beta1 == pytest.approx(0.9)
        assert settings.adam.beta2 == pytest.approx(0.999)
        assert settings.adam.eps == pytest.approx(1e-8)
        assert settings.max_steps == 2000
        assert settings.loss_stop == pytest.approx(1e-3)
        assert settings.gradient.scheme == "central"

    def test_empty_config_uses_field_defaults(self):
        assert OptimizerSettings.from_config({}) == OptimizerSettings()


class TestLoss:
    def test_context_defaults_to_zero_state(self):
        ctx = make_context()
        np.testing.assert_array_equal(ctx.rho0.data, basis_state(2, 0).data)

    def test_context_rejects_mismatched_target(self):
        target = gibbs_state(tfi_hamiltonian(4, 1.0), 1.0)
        with pytest.raises(ValidationError):
            LossContext(layout=build_layout(2, 1), noise=NOISE2, target=target)

    def test_infidelity_matches_direct_evaluation(self):
        ctx = make_context()
        params = init_parameters(ctx.layout, 1, p_cap=ctx.noise.reset_cap)
        output = evolve(ctx.layout, params, ctx.noise)
        expected = 1.0 - uhlmann_fidelity(ctx.target.state, output)
        assert infidelity(ctx, params) == pytest.approx(expected, abs=1e-10)

    def test_half_trace_distance(self):
        ctx = make_context(loss="half_trace_distance")
        params = init_parameters(ctx.layout, 2, p_cap=ctx.noise.reset_cap)
        output = evolve(ctx.layout, params, ctx.noise)
        value = loss_value(ctx, params)
        assert 0.0 <= value <= 1.0
        assert value == pytest.approx(0.5 * trace_distance(output, ctx.target.state), abs=1e-10)

    def test_invariant_under_full_turn_of_any_angle(self):
        """Adding 2 pi to any single angle leaves the loss unchanged."""
        ctx = make_context()
        params = init_parameters(ctx.layout, 12, p_cap=ctx.noise.reset_cap)
        base = loss_value(ctx, params)
        for k in np.flatnonzero(params.periodic_mask):
            values = params.values.copy()
            values[k] += 2.0 * np.pi
            assert loss_value(ctx, params.with_values(values)) == pytest.approx(base, abs=1e-10)


class TestGradient:
    """Finite-difference gradients with cached prefixes."""

    def test_matches_richardson_estimate(self):
        ctx = make_context()
        params = init_parameters(ctx.layout, 3, p_cap=ctx.noise.reset_cap)
        values = params.values.copy()
        values[ctx.layout.probability_indices()] = [0.3, 0.6]
        params = params.with_values(values)
        grad = gradient(ctx, params)
        for k in (0, 14, 20, 30, 31, 32, 33, 50, 65):
            assert grad[k] == pytest.approx(richardson(ctx, params, k), abs=1e-6)

    def test_loss_matches_evaluator(self):
        ctx = make_context()
        params = init_parameters(ctx.layout, 4, p_cap=ctx.noise.reset_cap)
        loss, _ = loss_and_gradient(LossEvaluator(ctx), params)
        assert loss == pytest.approx(loss_value(ctx, params), abs=1e-12)

    def test_one_sided_at_lower_bound(self):
        ctx = make_context()
        layout = ctx.layout
        params = init_parameters(layout, 5, p_cap=ctx.noise.reset_cap)
        k = int(layout.probability_indices()[0])
        values = params.values.copy()
        values[k] = 0.0
        params = params.with_values(values)
        h = GradientScheme().step
        up = values.copy()
        up[k] = h
        expected = (loss_value(ctx, params.with_values(up)) - loss_value(ctx, params)) / h
        assert gradient(ctx, params)[k] == pytest.approx(expected, abs=1e-9)

    def test_one_sided_at_upper_bound(self):
        ctx = make_context()
        layout = ctx.layout
        params = init_parameters(layout, 6, p_cap=ctx.noise.reset_cap)
        k = int(layout.probability_indices()[1])
        values = params.values.copy()
        values[k] = ctx.noise.reset_cap
        params = params.with_values(values)
        h = GradientScheme().step
        down = values.copy()
        down[k] -= h
        expected = (loss_value(ctx, params) - loss_value(ctx, params.with_values(down))) / h
        assert gradient(ctx, params)[k] == pytest.approx(expected, abs=1e-9)

    def test_inactive_reset_has_flat_target(self):
        """With p = 0 the reset target angles do not affect the loss."""
        ctx = make_context()
        params = init_parameters(ctx.layout, 7, p_cap=ctx.noise.reset_cap)
        k = int(ctx.layout.probability_indices()[0])
        values = params.values.copy()
        values[k] = 0.0
        grad = gradient(ctx, params.with_values(values))
        assert grad[k + 1] == 0.0
        assert grad[k + 2] == 0.0

    def test_step_halving_is_second_order(self):
        """Central differences at h, h/2 and h/4 differ by ratios close to 4."""
        ctx = make_context(depth_d=2, noise=NoiseModel.noiseless())
        h = 1e-3
        ratios = []
        for seed in range(10):
            params = init_parameters(ctx.layout, 100 + seed)
            values = params.values.copy()
            idx = ctx.layout.probability_indices()
            values[idx] = np.random.default_rng(seed).uniform(0.2, 0.8, size=idx.size)
            params = params.with_values(values)
            g1, g2, g4 = (gradient(ctx, params, GradientScheme(step=step)) for step in (h, h / 2, h / 4))
            ratios.append(np.linalg.norm(g1 - g2) / np.linalg.norm(g2 - g4))
        assert 3.5 <= np.median(ratios) <= 4.5
        assert all(2.5 <= r <= 5.5 for r in ratios)

    def test_forward_scheme(self):
        ctx = make_context(depth_d=0)
        params = init_parameters(ctx.layout, 8)
        central = gradient(ctx, params)
        forward = gradient(ctx, params, GradientScheme(scheme="forward", step=1e-6))
        np.testing.assert_allclose(forward, central, atol=1e-4)


class TestAdam:
    """Projected Adam updates."""

    def test_first_step_moves_by_learning_rate(self):
        """The bias-corrected first step has magnitude lr against the gradient sign."""
        params = angle_params([0.1, 0.1, 0.1])
        state = AdamState.initial(3)
        state, params = adam_step(state, params, np.array([2.0, -0.5, 0.0]))
        np.testing.assert_allclose(params.values, [0.08, 0.12, 0.1], atol=1e-8)
        assert state.step == 1

    def test_zero_gradient_keeps_parameters(self):
        layout = build_layout(2, 1)
        params = init_parameters(layout, 9, p_cap=0.99)
        state, out = adam_step(AdamState.initial(layout.n_params), params, np.zeros(layout.n_params))
        np.testing.assert_array_equal(out.values, params.values)
        np.testing.assert_array_equal(state.m, np.zeros(layout.n_params))

    def test_projection_clips_probabilities(self):
        layout = build_layout(2, 1)
        lower, upper = parameter_bounds(layout, 0.99)
        values = np.zeros(layout.n_params)
        idx = layout.probability_indices()
        values[idx] = [0.98, 0.005]
        params = ParameterVector(values=values, lower=lower, upper=upper)
        grad = np.zeros(layout.n_params)
        grad[idx] = [-1.0, 1.0]
        _, out = adam_step(AdamState.initial(layout.n_params), params, grad)
        np.testing.assert_allclose(out.values[idx], [0.99, 0.0])

    def test_angles_wrap(self):
        params = angle_params([np.pi - 0.01])
        _, out = adam_step(AdamState.initial(1), params, np.array([-1.0]))
        assert out.values[0] == pytest.approx(-np.pi + 0.01, abs=1e-6)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            adam_step(AdamState.initial(2), angle_params([0.0, 0.0]), np.zeros(3))


class TestOptimizeRun:
    """Seeded runs and restart selection."""

    def test_short_run_record(self):
        ctx = make_context()
        record = optimize_run(ctx, seed=11, max_steps=5, record_wall_time=False)
        assert record.termination == "max_steps"
        assert record.steps == 5
        assert len(record.loss_trace) == 6
        start = init_parameters(ctx.layout, 11, p_cap=ctx.noise.reset_cap)
        assert record.loss_trace[0] == pytest.approx(infidelity(ctx, start), abs=1e-12)
        assert record.final_fidelity == pytest.approx(1.0 - record.final_loss, abs=1e-12)
        assert record.wall_seconds == 0.0
        assert record.config["n"] == 2 and record.config["D"] == 1

    def test_deterministic(self):
        ctx = make_context()
        first = optimize_run(ctx, seed=3, max_steps=4, record_wall_time=False)
        second = optimize_run(ctx, seed=3, max_steps=4, record_wall_time=False)
        assert first.model_dump() == second.model_dump()

    def test_threshold_stops_before_any_update(self):
        record = optimize_run(make_context(), seed=1, max_steps=10, loss_stop=1.0)
        assert record.termination == "loss_threshold"
        assert record.steps == 0
        assert len(record.loss_trace) == 1

    def test_final_parameters_respect_cap(self):
        ctx = make_context()
        record = optimize_run(ctx, seed=2, max_steps=3)
        probs = np.array(record.final_params)[ctx.layout.probability_mask()]
        assert np.all((probs >= 0.0) & (probs <= ctx.noise.reset_cap))

    def test_executor_matches_sequential(self):
        ctx = make_context(depth_d=0)
        kwargs = {"max_steps": 3, "record_wall_time": False}
        sequential = run_restarts(ctx, [1, 2, 3], **kwargs)
        with ThreadPoolExecutor(max_workers=2) as pool:
            pooled = run_restarts(ctx, [1, 2, 3], executor=pool, **kwargs)
        assert [r.model_dump() for r in pooled] == [r.model_dump() for r in sequential]

    def test_select_best_prefers_earliest_tie(self):
        base = optimize_run(make_context(depth_d=0), seed=1, max_steps=1, record_wall_time=False)
        records = [
            base.model_copy(update={"seed": 1, "final_fidelity": 0.5}),
            base.model_copy(update={"seed": 2, "final_fidelity": 0.9}),
            base.model_copy(update={"seed": 3, "final_fidelity": 0.9}),
        ]
        assert select_best(records).seed == 2

    def test_best_of_validation(self):
        ctx = make_context(depth_d=0)
        with pytest.raises(ValueError):
            best_of(ctx, 0, [1])
        with pytest.raises(ValueError):
            best_of(ctx, 3, [1, 2])
        with pytest.raises(ValueError):
            select_best([])

    def test_best_of_picks_maximum(self):
        ctx = make_context(depth_d=0)
        kwargs = {"max_steps": 2, "record_wall_time": False}
        records = run_restarts(ctx, [4, 5, 6], **kwargs)
        best = best_of(ctx, 3, [4, 5, 6], **kwargs)
        assert best.final_fidelity == max(r.final_fidelity for r in records)

    @pytest.mark.slow
    def test_noiseless_two_qubits_converges(self):
        """Best of five D=2 runs prepares the n=2 Ising Gibbs state at beta=1 with F >= 0.99."""
        ctx = make_context(depth_d=2, noise=NoiseModel.noiseless())
        best = best_of(ctx, 5, [0, 1, 2, 3, 4], max_steps=2000)
        assert best.final_fidelity >= 0.99
