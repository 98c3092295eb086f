"""
Command-line entrypoint for experiments, toy-model tables, trajectory
validation and plot-data aggregation.

Usage:
    python -m scripts.dvqa_cli prepare-gibbs --config configs/tfi_noiseless.yaml
"""
import asyncio
import json
import logging
from pathlib import Path
from typing import List, Optional

import click
import pandas as pd
import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from core.config_loader import config_section, load_module_config
from core.settings import get_settings
from modules.harness.models.harness import ExperimentConfig
from modules.harness.tools.plot_data import emit_plot_data
from modules.harness.tools.result_store import read_results_csv
from modules.harness.workflows.experiment_workflow import ExperimentWorkflow
from modules.toymodel.tools.toy import toy_table
from modules.trajectories.models.trajectories import TrajectoryValidationRequest
from modules.trajectories.workflows.validation_workflow import TrajectoryValidationWorkflow

logger = logging.getLogger(__name__)

env_path = Path(__file__).parent.parent / ".env"
if env_path.exists():
    load_dotenv(env_path)


def _float_grid(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}") from e


def _load_experiment(path: Path) -> ExperimentConfig:
    try:
        return ExperimentConfig.from_yaml(path)
    except (ValidationError, ValueError, OSError, yaml.YAMLError) as e:
        raise click.ClickException(f"invalid experiment config {path}: {e}")


def _run(cfg: ExperimentConfig, out_dir: Optional[Path], sweep: bool) -> None:
    workflow = ExperimentWorkflow()
    records = asyncio.run(workflow.sweep(cfg) if sweep else workflow.run_experiment(cfg))
    target_dir = out_dir or get_settings().results_dir / cfg.name
    jsonl, csv = workflow.write_outputs(records, target_dir)
    best = [r for r in records if r.best]
    click.echo(f"{len(best)} points, {len(records)} rows -> {csv} and {jsonl}")
    for r in best:
        click.echo(f"  {r.model} n={r.n} D={r.D} beta={r.beta:g}: fidelity {r.fidelity:.6f}")


@click.group()
def cli():
    """Dissipative variational Gibbs-state preparation."""
    logging.basicConfig(
        level=get_settings().log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command("prepare-gibbs")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Output directory (default: $DVQA_RESULTS_DIR/<name>)")
def prepare_gibbs(config_path: Path, out_dir: Optional[Path]):
    """Run one experiment config."""
    _run(_load_experiment(config_path), out_dir, sweep=False)


@cli.command("sweep")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=None)
def sweep(config_path: Path, out_dir: Optional[Path]):
    """Run an experiment across its size and depth axes."""
    _run(_load_experiment(config_path), out_dir, sweep=True)


@cli.command("toy-model")
@click.option("--lambda", "lambdas", default=None, help="Comma-separated depolarizing rates")
@click.option("--radius", "radii", default=None, help="Comma-separated Bloch radii")
@click.option("--out", "out_file", type=click.Path(dir_okay=False, path_type=Path), default=None)
def toy_model(lambdas: Optional[str], radii: Optional[str], out_file: Optional[Path]):
    """Tabulate optimal reset probabilities."""
    grid = config_section(load_module_config("toymodel"), "grid")
    lam_values = _float_grid(lambdas) if lambdas else grid.get("lambdas", [0.1])
    radius_values = _float_grid(radii) if radii else grid.get("radii", [0.8])
    try:
        rows = toy_table(lam_values, radius_values)
    except ValueError as e:
        raise click.ClickException(str(e))
    frame = pd.DataFrame([row.model_dump() for row in rows])
    if out_file:
        out_file.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out_file, index=False)
        click.echo(f"Wrote {len(frame)} rows to {out_file}")
    else:
        click.echo(frame.to_string(index=False))


@cli.command("validate-trajectories")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
              help="YAML with n, depth_d, seed, repetitions, noise_rate")
@click.option("--samples", type=int, default=None, help="Base number of trajectories M")
def validate_trajectories(config_path: Optional[Path], samples: Optional[int]):
    """Compare trajectory averages against density-matrix evolution."""
    data = {}
    if config_path:
        with open(config_path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    defaults = load_module_config("trajectories")
    data.setdefault("samples", config_section(defaults, "sampling").get("samples", 10000))
    data.setdefault("repetitions", config_section(defaults, "convergence").get("repetitions", 20))
    if samples is not None:
        data["samples"] = samples
    try:
        request = TrajectoryValidationRequest(**data)
        report = TrajectoryValidationWorkflow(defaults).run(request)
    except (ValidationError, ValueError) as e:
        raise click.ClickException(str(e))
    click.echo(json.dumps(report.model_dump(), indent=2))


@cli.command("emit-plots")
@click.option("--in", "in_file", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--group-by", "group_by", default="beta", help="Comma-separated grouping columns")
@click.option("--stat", type=click.Choice(["best", "median", "std"]), default="median")
@click.option("--all-rows", is_flag=True, help="Aggregate every restart instead of best-marked rows")
@click.option("--out", "out_file", type=click.Path(dir_okay=False, path_type=Path), default=None)
def emit_plots(in_file: Path, group_by: str, stat: str, all_rows: bool, out_file: Optional[Path]):
    """Aggregate a results CSV into a plot-ready table."""
    keys = [k.strip() for k in group_by.split(",") if k.strip()]
    try:
        frame = emit_plot_data(read_results_csv(in_file), keys, stat, best_only=not all_rows)
    except ValueError as e:
        raise click.ClickException(str(e))
    if out_file:
        out_file.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out_file, index=False)
        click.echo(f"Wrote {len(frame)} rows to {out_file}")
    else:
        click.echo(frame.to_string(index=False))


if __name__ == "__main__":
    cli()
