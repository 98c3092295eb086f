"""
Tests for experiment configs, seeding, result files, aggregation and audit.
"""
import asyncio
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import yaml
from pydantic import ValidationError

from core.settings import DvqaSettings
from modules.harness.models import CSV_COLUMNS, ExperimentConfig, RandomModel, ResultRow
from modules.harness.tools import (
    audit_rows,
    build_hamiltonian,
    derive_seed,
    emit_plot_data,
    instance_descriptors,
    noise_rng,
    read_records_jsonl,
    read_results_csv,
    restart_seeds,
    rows_to_frame,
    sample_noise_model,
)
from modules.harness.workflows import ExperimentWorkflow, expand_points
from modules.hamiltonians.models import RandomDescriptor, TfiDescriptor

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def tiny_config(**overrides):
    data = {
        "schema_version": 1,
        "name": "tiny",
        "model": {"kind": "tfi", "h": 1.0},
        "n": 2,
        "depth_d": 0,
        "betas": [0.5, 1.0],
        "noisy": True,
        "restarts": 2,
        "max_steps": 3,
        "master_seed": 11,
    }
    data.update(overrides)
    return ExperimentConfig(**data)


def run(cfg):
    workflow = ExperimentWorkflow(settings=DvqaSettings(workers=1))
    return asyncio.run(workflow.run_experiment(cfg))


def row(beta, fidelity, restart=0, best=True, D=1):
    return ResultRow(
        model="tfi(h=1)", n=2, D=D, beta=beta, noisy=False, seed=restart, restart=restart, best=best,
        fidelity=fidelity, steps=10, termination="max_steps", wall_seconds=0.0,
    )


class TestExperimentConfig:
    def test_yaml_merges_harness_defaults(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(yaml.safe_dump({"schema_version": 1, "model": {"kind": "tfi", "h": 1.0}, "betas": [1.0]}))
        cfg = ExperimentConfig.from_yaml(path)
        assert cfg.restarts == 10
        assert cfg.max_steps == 2000
        assert cfg.noise_rate_range == (1e-3, 2e-3)
        assert cfg.p_star == pytest.approx(0.99)
        assert cfg.record_wall_time is False

    def test_random_model_count_from_config(self, tmp_path):
        path = tmp_path / "exp.yaml"
        path.write_text(yaml.safe_dump({"schema_version": 1, "model": {"kind": "random"}, "betas": [1.0]}))
        cfg = ExperimentConfig.from_yaml(path)
        assert isinstance(cfg.model, RandomModel)
        assert cfg.model.count == 20

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValidationError):
            tiny_config(learning_rate=0.1)

    def test_negative_beta_rejected(self):
        with pytest.raises(ValidationError):
            tiny_config(betas=[-1.0])

    def test_sweep_sizes(self):
        cfg = tiny_config(sweep={"n_values": [2, 4], "depth_equals_n": True})
        assert cfg.sizes() == [(2, 2), (4, 4)]
        cfg = tiny_config(sweep={"depth_values": [0, 1, 2]})
        assert cfg.sizes() == [(2, 0), (2, 1), (2, 2)]
        assert tiny_config().sizes() == [(2, 0)]

    def test_sweep_axes_exclusive(self):
        with pytest.raises(ValidationError):
            tiny_config(sweep={"depth_values": [1], "depth_equals_n": True})

    def test_shipped_configs_load(self):
        for name in ("smoke_tfi_n2", "tfi_noiseless", "xy_noisy", "random_median", "size_sweep"):
            ExperimentConfig.from_yaml(CONFIGS / f"{name}.yaml")


class TestSeedingAndNoise:
    def test_seeds_are_positional(self):
        assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
        assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
        seeds = restart_seeds(0, 4, 10)
        assert len(set(seeds)) == 10
        assert restart_seeds(0, 4, 3) == seeds[:3]

    def test_noise_rates_in_range(self):
        noise = sample_noise_model(6, (1e-3, 2e-3), noise_rng(5, 0), p_star=0.99)
        assert noise.enabled and noise.p_star == 0.99
        rates = np.array(noise.lambdas + noise.omegas)
        assert rates.size == 12
        assert np.all((rates >= 1e-3) & (rates <= 2e-3))

    def test_noise_reproducible(self):
        first = sample_noise_model(4, (0.0, 0.1), noise_rng(5, 1))
        assert first == sample_noise_model(4, (0.0, 0.1), noise_rng(5, 1))
        assert first != sample_noise_model(4, (0.0, 0.1), noise_rng(5, 1, restart=0))

    def test_bad_range(self):
        with pytest.raises(ValueError):
            sample_noise_model(2, (0.2, 0.1), noise_rng(0, 0))

    def test_random_instances(self):
        descriptors = instance_descriptors(RandomModel(count=3, seed=9))
        assert len({d.seed for d in descriptors}) == 3
        assert all(isinstance(d, RandomDescriptor) for d in descriptors)
        ham = build_hamiltonian(descriptors[0], 4)
        assert ham.n == 4 and ham.descriptor == descriptors[0]

    def test_point_order(self):
        cfg = tiny_config(model={"kind": "random", "count": 2}, sweep={"n_values": [2, 4]})
        points = expand_points(cfg)
        assert len(points) == 2 * 2 * 2
        assert [p.index for p in points] == list(range(8))
        assert [(p.n, p.beta) for p in points[:4]] == [(2, 0.5), (2, 1.0), (2, 0.5), (2, 1.0)]


class TestResultFiles:
    def test_frame_columns(self):
        frame = rows_to_frame([row(1.0, 0.9, restart=2, best=False), row(1.0, 0.9, restart=2)])
        assert list(frame.columns) == CSV_COLUMNS
        assert frame["restart"].tolist() == ["2", "best"]

    def test_csv_header(self, tmp_path):
        workflow = ExperimentWorkflow(settings=DvqaSettings(workers=1))
        records = run(tiny_config(betas=[1.0], restarts=1, max_steps=1))
        _, csv_path = workflow.write_outputs(records, tmp_path)
        header = csv_path.read_text().splitlines()[0]
        assert header == "model,n,D,beta,noisy,seed,restart,fidelity,steps,termination,wall_seconds"
        frame = read_results_csv(csv_path)
        assert frame["restart"].tolist() == ["0", "best"]

    def test_read_rejects_missing_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        pd.DataFrame({"model": ["x"], "fidelity": [0.5]}).to_csv(path, index=False)
        with pytest.raises(ValueError):
            read_results_csv(path)


class TestEmitPlotData:
    """Aggregation of result rows into plot tables."""

    ROWS = [
        row(0.5, 0.99), row(0.5, 0.97), row(0.5, 0.95),
        row(2.0, 0.90), row(2.0, 0.80),
        row(2.0, 0.10, restart=1, best=False),
    ]

    def test_median(self):
        out = emit_plot_data(self.ROWS, ["beta"], "median")
        assert list(out.columns) == ["beta", "fidelity_median", "count"]
        assert out["fidelity_median"].tolist() == pytest.approx([0.97, 0.85])
        assert out["count"].tolist() == [3, 2]

    def test_best_and_std(self):
        assert emit_plot_data(self.ROWS, ["beta"], "best")["fidelity_best"].tolist() == pytest.approx([0.99, 0.90])
        std = emit_plot_data(self.ROWS, ["beta"], "std")["fidelity_std"].tolist()
        assert std == pytest.approx([np.std([0.99, 0.97, 0.95]), 0.05])

    def test_all_rows(self):
        out = emit_plot_data(self.ROWS, ["beta"], "best", best_only=False)
        assert out["count"].tolist() == [3, 3]

    def test_group_by_two_columns(self):
        rows = [row(1.0, 0.9, D=1), row(1.0, 0.8, D=2), row(2.0, 0.7, D=1)]
        out = emit_plot_data(rows, ["D", "beta"], "median")
        assert out[["D", "beta"]].values.tolist() == [[1, 1.0], [1, 2.0], [2, 1.0]]

    def test_accepts_frame(self):
        frame = rows_to_frame(self.ROWS)
        pd.testing.assert_frame_equal(emit_plot_data(frame, ["beta"]), emit_plot_data(self.ROWS, ["beta"]))

    def test_errors(self):
        with pytest.raises(ValueError):
            emit_plot_data([], ["beta"])
        with pytest.raises(ValueError):
            emit_plot_data(self.ROWS, ["temperature"])
        with pytest.raises(ValueError):
            emit_plot_data([row(1.0, 0.5, best=False)], ["beta"])


class TestExperimentWorkflow:
    """Small end-to-end experiments."""

    def test_record_layout(self):
        records = run(tiny_config())
        assert len(records) == 2 * (2 + 1)
        assert [(r.point, r.best, r.restart) for r in records[:3]] == [(0, False, 0), (0, False, 1), (0, True, records[2].restart)]
        for point in (0, 1):
            group = [r for r in records if r.point == point]
            best = [r for r in group if r.best]
            assert len(best) == 1
            assert best[0].fidelity == max(r.fidelity for r in group)
        assert all(r.noisy and r.steps == 3 and r.wall_seconds == 0.0 for r in records)

    def test_deterministic(self):
        first = [r.model_dump() for r in run(tiny_config())]
        second = [r.model_dump() for r in run(tiny_config())]
        assert first == second

    def test_noise_shared_within_point(self):
        records = run(tiny_config())
        point0 = [r.noise for r in records if r.point == 0]
        point1 = [r.noise for r in records if r.point == 1]
        assert all(noise == point0[0] for noise in point0)
        assert point0[0] != point1[0]

    def test_noise_redrawn_per_restart(self):
        records = run(tiny_config(noise_redraw="per_restart", betas=[1.0]))
        restarts = [r for r in records if not r.best]
        assert restarts[0].noise != restarts[1].noise

    def test_noiseless_records(self):
        records = run(tiny_config(noisy=False, betas=[1.0], restarts=1))
        assert all(not r.noisy and not r.noise.enabled for r in records)
        assert records[0].descriptor == TfiDescriptor(h=1.0)

    def test_records_round_trip_and_audit(self, tmp_path):
        workflow = ExperimentWorkflow(settings=DvqaSettings(workers=1))
        cfg = tiny_config(depth_d=1, betas=[1.0])
        records = run(cfg)
        jsonl, _ = workflow.write_outputs(records, tmp_path)
        loaded = read_records_jsonl(jsonl)
        assert [r.model_dump() for r in loaded] == [r.model_dump() for r in records]
        result = audit_rows(loaded)
        assert result.checked == len(records)
        assert result.mismatches == []
        assert result.max_abs_error < 1e-8

    def test_audit_flags_tampered_record(self):
        records = run(tiny_config(betas=[1.0], restarts=1))
        tampered = records[0].model_copy(update={"fidelity": max(records[0].fidelity - 0.1, 0.0)})
        result = audit_rows([tampered, records[1]])
        assert result.mismatches == [0]
