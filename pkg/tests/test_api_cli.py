"""
Tests for the HTTP API, module discovery, settings and the command line.
"""
import json

import pandas as pd
import pytest
import yaml
from click.testing import CliRunner
from fastapi.testclient import TestClient
from pydantic import ValidationError

from api.main import app
from core.module_registry import ModuleRegistry
from core.settings import DvqaSettings, get_settings
from scripts.dvqa_cli import cli

TINY_EXPERIMENT = {
    "schema_version": 1,
    "name": "tiny",
    "model": {"kind": "tfi", "h": 1.0},
    "n": 2,
    "depth_d": 0,
    "betas": [1.0],
    "noisy": False,
    "restarts": 2,
    "max_steps": 2,
    "master_seed": 1,
}


@pytest.fixture
def client():
    return TestClient(app)


def json_payload(output):
    """JSON document embedded in CLI output that may also carry log lines."""
    return json.loads(output[output.index("{"):output.rindex("}") + 1])


class TestRegistry:
    def test_discovers_every_module(self):
        modules = ModuleRegistry().discover_modules()
        assert set(modules) == {
            "ansatz", "channels", "hamiltonians", "harness", "optimize", "qstate", "toymodel", "trajectories",
        }
        assert modules["qstate"].version == "1.0.0"

    def test_routed_modules(self):
        registry = ModuleRegistry()
        routed = registry.routed_modules()
        assert set(routed) == {"harness", "toymodel", "trajectories"}
        assert routed["toymodel"].prefix == "/api/toymodel"

    def test_enabled_subset(self):
        modules = ModuleRegistry().discover_modules(enabled_modules={"toymodel"})
        assert list(modules) == ["toymodel"]


class TestSettings:
    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("DVQA_WORKERS", "3")
        get_settings.cache_clear()
        try:
            assert get_settings().workers == 3
        finally:
            get_settings.cache_clear()

    def test_workers_must_be_positive(self):
        with pytest.raises(ValidationError):
            DvqaSettings(workers=0)


class TestApi:
    """Routes mounted from discovered modules."""

    def test_root_and_health(self, client):
        body = client.get("/").json()
        assert body["total_modules"] == 8
        assert client.get("/health").json()["status"] == "healthy"
        for prefix in ("toymodel", "trajectories", "harness"):
            assert client.get(f"/api/{prefix}/health").json()["service"] == prefix

    def test_modules_listing(self, client):
        listed = {m["name"]: m for m in client.get("/modules").json()["modules"]}
        assert listed["harness"]["prefix"] == "/api/harness"
        assert listed["qstate"]["prefix"] is None

    def test_toy_table(self, client):
        response = client.post("/api/toymodel/table", json={"lambdas": [0.1, 0.3], "radii": [0.8]})
        assert response.status_code == 200
        rows = response.json()["rows"]
        assert rows[0]["p"] == pytest.approx(0.6031746, abs=1e-6)
        assert rows[1]["feasible"] is False

    def test_toy_table_rejects_bad_radius(self, client):
        response = client.post("/api/toymodel/table", json={"lambdas": [0.1], "radii": [0.0]})
        assert response.status_code == 422

    def test_prepare_gibbs(self, client):
        response = client.post("/api/harness/prepare-gibbs", json=TINY_EXPERIMENT)
        assert response.status_code == 200
        rows = response.json()
        assert len(rows) == 3
        assert [r["best"] for r in rows] == [False, False, True]

    def test_prepare_gibbs_rejects_unknown_field(self, client):
        response = client.post("/api/harness/prepare-gibbs", json={**TINY_EXPERIMENT, "bogus": 1})
        assert response.status_code == 422

    def test_emit_plots(self, client):
        rows = client.post("/api/harness/prepare-gibbs", json=TINY_EXPERIMENT).json()
        response = client.post("/api/harness/emit-plots", json={"rows": rows, "group_by": ["beta"], "stat": "best"})
        assert response.status_code == 200
        (entry,) = response.json()
        assert entry["beta"] == 1.0
        assert entry["count"] == 1
        assert entry["fidelity_best"] == pytest.approx(max(r["fidelity"] for r in rows))

    def test_emit_plots_unknown_column(self, client):
        rows = client.post("/api/harness/prepare-gibbs", json=TINY_EXPERIMENT).json()
        response = client.post("/api/harness/emit-plots", json={"rows": rows, "group_by": ["nope"]})
        assert response.status_code == 422

    def test_validate_trajectories(self, client):
        response = client.post(
            "/api/trajectories/validate", json={"n": 2, "depth_d": 1, "samples": 20, "repetitions": 2, "seed": 4}
        )
        assert response.status_code == 200
        report = response.json()
        assert report["larger_samples"] == 80
        assert report["enumeration_error"] < 1e-10


class TestCli:
    """Click commands."""

    def test_toy_model_csv(self, tmp_path):
        out = tmp_path / "toy.csv"
        result = CliRunner().invoke(cli, ["toy-model", "--lambda", "0.1,0.3", "--radius", "0.8", "--out", str(out)])
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(out)
        assert frame["p"].iloc[0] == pytest.approx(0.6031746, abs=1e-6)
        assert frame["feasible"].tolist() == [True, False]

    def test_toy_model_bad_grid(self):
        result = CliRunner().invoke(cli, ["toy-model", "--lambda", "abc"])
        assert result.exit_code != 0

    def test_prepare_gibbs_and_emit_plots(self, tmp_path):
        config = tmp_path / "tiny.yaml"
        config.write_text(yaml.safe_dump(TINY_EXPERIMENT))
        out_dir = tmp_path / "out"
        runner = CliRunner()
        result = runner.invoke(cli, ["prepare-gibbs", "--config", str(config), "--out", str(out_dir)])
        assert result.exit_code == 0, result.output
        assert (out_dir / "results.csv").exists() and (out_dir / "records.jsonl").exists()

        plot = tmp_path / "plot.csv"
        result = runner.invoke(
            cli, ["emit-plots", "--in", str(out_dir / "results.csv"), "--stat", "median", "--out", str(plot)]
        )
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(plot)
        assert list(frame.columns) == ["beta", "fidelity_median", "count"]

    def test_sweep(self, tmp_path):
        config = tmp_path / "sweep.yaml"
        config.write_text(yaml.safe_dump({**TINY_EXPERIMENT, "restarts": 1, "sweep": {"depth_values": [0, 1]}}))
        result = CliRunner().invoke(cli, ["sweep", "--config", str(config), "--out", str(tmp_path / "out")])
        assert result.exit_code == 0, result.output
        frame = pd.read_csv(tmp_path / "out" / "results.csv")
        assert sorted(frame["D"].unique().tolist()) == [0, 1]

    def test_invalid_config(self, tmp_path):
        config = tmp_path / "bad.yaml"
        config.write_text(yaml.safe_dump({"schema_version": 2, "model": {"kind": "tfi", "h": 1.0}, "betas": [1.0]}))
        result = CliRunner().invoke(cli, ["prepare-gibbs", "--config", str(config)])
        assert result.exit_code != 0
        assert "invalid experiment config" in result.output

    def test_validate_trajectories(self, tmp_path):
        config = tmp_path / "traj.yaml"
        config.write_text(yaml.safe_dump({"n": 2, "depth_d": 1, "seed": 1, "repetitions": 2}))
        result = CliRunner().invoke(cli, ["validate-trajectories", "--config", str(config), "--samples", "20"])
        assert result.exit_code == 0, result.output
        report = json_payload(result.output)
        assert report["samples"] == 20
        assert report["repetitions"] == 2
