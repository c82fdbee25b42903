"""
Benchmark Service

Runs the experiment grid described by a BenchConfig: for every n, every
(p1, p2) grid point and every replicate an instance is generated from a
derived seed, and every configured solver is run on it. Per-solve records
are aggregated per (solver, n, p1, p2) cell with pandas.

Config files are flat KEY=value files (dotenv syntax), keys matching the
BenchConfig field names case-insensitively, lists comma-separated:

    N_VALUES=5,6
    P1_START=0.1
    P1_STOP=0.3
    REPLICATES=4
    SOLVERS=bnb,ltiu
    OBJECTIVE=egalitarian
    TIME_LIMIT_MS=2000
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from dotenv import dotenv_values
from pydantic import ValidationError

from smti.core.config import settings
from smti.core.exceptions import BenchConfigError, InputReadError, OutputWriteError
from smti.core.logging import get_logger, get_run_id, set_run_id, setup_logging
from smti.models.schemas import BenchConfig, GaParams, GenParams, LtiuParams
from smti.services.generator import derive_seed, generate
from smti.services.solver_service import run_solver

logger = get_logger(__name__)

CSV_COLUMNS = ["solver", "n", "p1", "p2", "mean_time_ms", "mean_cost", "solved_count", "optimal_count"]
TIMEOUT_MARK = "TO"


@dataclass(frozen=True)
class BenchTask:
    """One solver run on one replicate of one grid cell"""
    solver_index: int
    n: int
    p1_index: int
    p2_index: int
    p1: float
    p2: float
    replicate: int
    seed: int


def load_bench_config(path: Path) -> BenchConfig:
    """Read and validate a KEY=value bench config file"""
    if not Path(path).is_file():
        raise InputReadError(str(path), "no such file")
    raw = {key.lower(): value for key, value in dotenv_values(path).items() if value is not None}
    try:
        return BenchConfig(**raw)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
            for error in exc.errors()
        )
        raise BenchConfigError(
            f"Invalid bench config {path}: {problems}",
            details={"path": str(path), "errors": exc.error_count()}
        ) from exc


def plan_tasks(config: BenchConfig) -> List[BenchTask]:
    """All runs of the grid in canonical order (solver, n, p1, p2, replicate)"""
    tasks = []
    p1_values, p2_values = config.p1_values(), config.p2_values()
    for solver_index in range(len(config.solvers)):
        for n in config.n_values:
            for i, p1 in enumerate(p1_values):
                for j, p2 in enumerate(p2_values):
                    for replicate in range(config.replicates):
                        tasks.append(BenchTask(
                            solver_index=solver_index, n=n, p1_index=i, p2_index=j,
                            p1=p1, p2=p2, replicate=replicate,
                            seed=derive_seed(config.base_seed, i, j, replicate),
                        ))
    return tasks


def run_task(config: BenchConfig, task: BenchTask, parent_run_id: Optional[str] = None) -> Dict[str, Any]:
    """Generate the task's instance, solve it and return one result record"""
    solver = config.solvers[task.solver_index]
    set_run_id(
        f"{parent_run_id or 'bench'}/{solver.value}-{task.n}-{task.p1_index}-{task.p2_index}-{task.replicate}"
    )
    inst = generate(GenParams(n=task.n, p1=task.p1, p2=task.p2, seed=task.seed))

    ltiu = LtiuParams(step_limit=config.ltiu_steps, random_walk_p=config.ltiu_random_walk_p)
    ga = GaParams(
        population_size=config.ga_population,
        evolution_rounds=config.ga_rounds,
        crossover_p=config.ga_crossover_p,
        mutation_p=config.ga_mutation_p,
    )
    started = time.perf_counter()
    report = run_solver(
        inst, solver, config.objective, seed=task.seed,
        time_limit_ms=config.time_limit_ms, ltiu=ltiu, ga=ga,
    )
    time_ms = (time.perf_counter() - started) * 1000.0
    # bf and da ignore the clock; LTIU and GA read it only between iterations
    timed_out = report.stats.timed_out or (config.time_limit_ms > 0 and time_ms > config.time_limit_ms)

    return {
        "solver_index": task.solver_index,
        "solver": solver.value,
        "n": task.n,
        "p1": task.p1,
        "p2": task.p2,
        "replicate": task.replicate,
        "time_ms": time_ms,
        "cost": report.cost,
        "stable": report.stable,
        "optimal": report.optimal and not timed_out,
        "timed_out": timed_out,
    }


def aggregate(records: List[Dict[str, Any]]) -> pd.DataFrame:
    """
    Per-cell summary. mean_cost averages the solved replicates (stable and
    within the time limit); mean_time_ms is "TO" when any replicate hit the
    time limit.
    """
    df = pd.DataFrame.from_records(records)
    df["solved"] = df["stable"] & ~df["timed_out"]
    df["solved_cost"] = df["cost"].where(df["solved"])

    summary = (
        df.groupby(["solver_index", "solver", "n", "p1", "p2"], sort=True)
        .agg(
            mean_time_ms=("time_ms", "mean"),
            any_timeout=("timed_out", "any"),
            mean_cost=("solved_cost", "mean"),
            solved_count=("solved", "sum"),
            optimal_count=("optimal", "sum"),
        )
        .reset_index()
    )
    summary["mean_time_ms"] = [
        TIMEOUT_MARK if timed_out else f"{value:.3f}"
        for value, timed_out in zip(summary["mean_time_ms"], summary["any_timeout"])
    ]
    summary["mean_cost"] = ["" if pd.isna(value) else f"{value:.4f}" for value in summary["mean_cost"]]
    summary["solved_count"] = summary["solved_count"].astype(int)
    summary["optimal_count"] = summary["optimal_count"].astype(int)
    return summary[CSV_COLUMNS]


def run_bench(config: BenchConfig, jobs: Optional[int] = None) -> pd.DataFrame:
    """Run the whole grid; rows come back in canonical order whatever the job count"""
    workers = jobs or config.jobs
    tasks = plan_tasks(config)
    parent = get_run_id()
    logger.info(
        "Benchmark started",
        extra={"extra_fields": {
            "tasks": len(tasks), "jobs": workers, "solvers": [s.value for s in config.solvers],
            "objective": config.objective.value
        }}
    )

    started = time.perf_counter()
    if workers == 1:
        records = [run_task(config, task, parent) for task in tasks]
        if parent:
            set_run_id(parent)
    else:
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=setup_logging,
            initargs=(settings.LOG_LEVEL, settings.LOG_FORMAT),
        ) as pool:
            records = list(pool.map(
                run_task, [config] * len(tasks), tasks, [parent] * len(tasks)
            ))

    summary = aggregate(records)
    logger.info(
        "Benchmark finished",
        extra={"extra_fields": {
            "rows": len(summary), "elapsed_ms": round((time.perf_counter() - started) * 1000.0, 3)
        }}
    )
    return summary


def write_csv(summary: pd.DataFrame, path: Path) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        summary.to_csv(path, index=False)
    except OSError as exc:
        raise OutputWriteError(str(path), str(exc)) from exc
