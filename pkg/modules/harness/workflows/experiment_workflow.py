"""
Workflow running experiment configs: points, restarts and result rows.
"""
import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from core.config_loader import config_section, load_module_config
from core.settings import DvqaSettings, get_settings
from modules.ansatz.tools.layout import build_layout
from modules.channels.models.channels import NoiseModel
from modules.hamiltonians.models.hamiltonians import HamiltonianDescriptor
from modules.hamiltonians.tools.hamiltonians import gibbs_state
from modules.harness.models.harness import ExperimentConfig, ResultRecord
from modules.harness.tools.noise import sample_noise_model
from modules.harness.tools.result_store import write_records_jsonl, write_results_csv
from modules.harness.tools.seeding import noise_rng, restart_seeds
from modules.harness.tools.targets import build_hamiltonian, instance_descriptors
from modules.optimize.models.optimize import LossContext, OptimizerSettings, RunRecord
from modules.optimize.workflows.optimization import optimize_run, select_best

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentPoint:
    index: int
    n: int
    depth_d: int
    descriptor: HamiltonianDescriptor
    beta: float


@dataclass(frozen=True)
class RestartTask:
    point: ExperimentPoint
    restart: int
    seed: int
    ctx: LossContext
    settings: OptimizerSettings
    record_wall_time: bool


def _execute_task(task: RestartTask) -> Tuple[int, int, RunRecord]:
    record = optimize_run(task.ctx, task.seed, settings=task.settings, record_wall_time=task.record_wall_time)
    return task.point.index, task.restart, record


def expand_points(cfg: ExperimentConfig) -> List[ExperimentPoint]:
    """Experiment points in canonical order: (n, D), instance, beta."""
    points = []
    for n, depth_d in cfg.sizes():
        for descriptor in instance_descriptors(cfg.model):
            for beta in cfg.betas:
                points.append(ExperimentPoint(len(points), n, depth_d, descriptor, beta))
    return points


class ExperimentWorkflow:
    """Orchestrates best-of-k optimization over every point of an experiment."""

    def __init__(
        self,
        settings: Optional[DvqaSettings] = None,
        optimizer_settings: Optional[OptimizerSettings] = None,
    ):
        """
        Initialize the experiment workflow.

        Args:
            settings: Process settings (worker cap); read from the environment when None
            optimizer_settings: Base optimizer settings; loaded from the optimize config when None
        """
        self.settings = settings or get_settings()
        self.optimizer_settings = optimizer_settings or OptimizerSettings.from_config()
        self.outputs = config_section(load_module_config("harness"), "outputs")

    def _noise_for(self, cfg: ExperimentConfig, point: ExperimentPoint, restart: int) -> NoiseModel:
        if not cfg.noisy:
            return NoiseModel.noiseless()
        rng = noise_rng(cfg.master_seed, point.index, restart if cfg.noise_redraw == "per_restart" else None)
        return sample_noise_model(point.n, cfg.noise_rate_range, rng, p_star=cfg.p_star)

    def build_tasks(self, cfg: ExperimentConfig) -> List[RestartTask]:
        """One task per (point, restart), targets built once per point."""
        settings = self.optimizer_settings.model_copy(
            update={"max_steps": cfg.max_steps, "loss_stop": cfg.loss_stop, "loss": cfg.loss}
        )
        tasks = []
        for point in expand_points(cfg):
            layout = build_layout(point.n, point.depth_d)
            target = gibbs_state(build_hamiltonian(point.descriptor, point.n), point.beta)
            seeds = restart_seeds(cfg.master_seed, point.index, cfg.restarts)
            shared_noise = self._noise_for(cfg, point, 0) if cfg.noise_redraw == "per_point" else None
            for restart, seed in enumerate(seeds):
                noise = shared_noise or self._noise_for(cfg, point, restart)
                ctx = LossContext(layout=layout, noise=noise, target=target, loss=cfg.loss)
                tasks.append(RestartTask(point, restart, seed, ctx, settings, cfg.record_wall_time))
        return tasks

    async def _run_tasks(self, tasks: List[RestartTask]) -> List[Tuple[int, int, RunRecord]]:
        workers = min(self.settings.workers, len(tasks)) if tasks else 1
        if workers <= 1:
            return [_execute_task(task) for task in tasks]
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [loop.run_in_executor(pool, _execute_task, task) for task in tasks]
            return list(await asyncio.gather(*futures))

    @staticmethod
    def _to_record(point: ExperimentPoint, restart: int, run: RunRecord, best: bool) -> ResultRecord:
        return ResultRecord(
            model=point.descriptor.label,
            n=point.n,
            D=point.depth_d,
            beta=point.beta,
            noisy=run.noise.enabled,
            seed=run.seed,
            restart=restart,
            best=best,
            fidelity=run.final_fidelity,
            steps=run.steps,
            termination=run.termination,
            wall_seconds=run.wall_seconds,
            point=point.index,
            descriptor=point.descriptor,
            noise=run.noise,
            final_params=run.final_params,
            final_relative_entropy=run.final_relative_entropy,
            loss_trace=run.loss_trace,
        )

    async def run_experiment(self, cfg: ExperimentConfig) -> List[ResultRecord]:
        """
        Run every point of the config.

        Args:
            cfg: Validated experiment config

        Returns:
            Records for every restart plus one best-marked record per point,
            sorted by (point, best, restart)
        """
        tasks = self.build_tasks(cfg)
        points = {task.point.index: task.point for task in tasks}
        logger.info(
            f"Experiment {cfg.name}: {len(points)} points x {cfg.restarts} restarts, "
            f"workers={min(self.settings.workers, max(len(tasks), 1))}"
        )
        results = await self._run_tasks(tasks)

        by_point: Dict[int, List[Tuple[int, RunRecord]]] = {}
        for index, restart, run in results:
            by_point.setdefault(index, []).append((restart, run))

        records: List[ResultRecord] = []
        for index in sorted(by_point):
            point = points[index]
            runs = sorted(by_point[index], key=lambda item: item[0])
            for restart, run in runs:
                records.append(self._to_record(point, restart, run, best=False))
            best_run = select_best([run for _, run in runs])
            best_restart = next(r for r, run in runs if run is best_run)
            records.append(self._to_record(point, best_restart, best_run, best=True))
            logger.info(
                f"Point {index} ({point.descriptor.label}, n={point.n}, D={point.depth_d}, beta={point.beta}): "
                f"best fidelity {best_run.final_fidelity:.6f}"
            )
        records.sort(key=lambda r: (r.point, r.best, r.restart))
        return records

    async def sweep(self, cfg: ExperimentConfig) -> List[ResultRecord]:
        """Run a config across its size and depth axes."""
        sizes = cfg.sizes()
        logger.info(f"Sweep {cfg.name} over (n, D) = {sizes} and {len(cfg.betas)} betas")
        return await self.run_experiment(cfg)

    def write_outputs(self, records: List[ResultRecord], out_dir: Union[str, Path]) -> Tuple[Path, Path]:
        """Write records.jsonl and results.csv into `out_dir`."""
        out_dir = Path(out_dir)
        jsonl = write_records_jsonl(records, out_dir / self.outputs.get("records", "records.jsonl"))
        csv = write_results_csv([r.to_row() for r in records], out_dir / self.outputs.get("csv", "results.csv"))
        return jsonl, csv
