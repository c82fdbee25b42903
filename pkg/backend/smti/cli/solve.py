"""
solve: run one solver on an instance file and print its report.
"""
import argparse
from pathlib import Path
from typing import Any, Dict, Optional

from smti.cli.files import load_instance
from smti.models.enums import Objective, SolverName
from smti.models.schemas import GaParams, LtiuParams, SolveReport
from smti.services.solver_service import run_solver

EXIT_TIMEOUT = 2


def _given(**values: Any) -> Dict[str, Any]:
    return {key: value for key, value in values.items() if value is not None}


def cmd_solve(
    instance_file: Path,
    solver: SolverName,
    objective: Objective,
    seed: int = 0,
    time_limit_ms: int = 0,
    ltiu: Optional[LtiuParams] = None,
    ga: Optional[GaParams] = None,
) -> SolveReport:
    inst = load_instance(instance_file)
    return run_solver(inst, solver, objective, seed=seed, time_limit_ms=time_limit_ms, ltiu=ltiu, ga=ga)


def format_report(report: SolveReport) -> str:
    lines = [
        f"solver: {report.solver.value}",
        f"objective: {report.objective.value}",
        f"cost: {report.cost}",
        f"cardinality: {report.cardinality}",
        f"optimal: {str(report.optimal).lower()}",
        f"stable: {str(report.stable).lower()}",
    ]
    if report.raw_eval is not None:
        lines.append(f"raw_eval: {report.raw_eval}")
    if report.final_eval is not None:
        lines.append(f"final_eval: {report.final_eval}")
    if report.stabilized_by is not None:
        lines.append(f"stabilized_by: {report.stabilized_by}")
    stats = report.stats
    lines.append(
        f"stats: nodes_explored={stats.nodes_explored} steps={stats.steps} restarts={stats.restarts} "
        f"rounds={stats.rounds} elapsed_ms={stats.elapsed_ms:.3f} timed_out={str(stats.timed_out).lower()}"
    )
    lines.append("matching:")
    lines += [f"{x} {y}" for x, y in report.matching.pairs()]
    return "\n".join(lines) + "\n"


def exit_code_for(report: SolveReport) -> int:
    """Branch and bound stopped by its clock has no optimality certificate"""
    if report.solver is SolverName.BRANCH_AND_BOUND and report.stats.timed_out:
        return EXIT_TIMEOUT
    return 0


def _run(args: argparse.Namespace) -> int:
    ltiu = LtiuParams(**_given(step_limit=args.steps, random_walk_p=args.random_walk_p))
    ga = GaParams(**_given(
        population_size=args.population,
        evolution_rounds=args.rounds,
        crossover_p=args.crossover_p,
        mutation_p=args.mutation_p,
    ))
    report = cmd_solve(
        args.instance, SolverName(args.solver), Objective(args.objective),
        seed=args.seed, time_limit_ms=args.time_limit_ms, ltiu=ltiu, ga=ga,
    )
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(format_report(report), end="")
    return exit_code_for(report)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("solve", help="solve an instance")
    parser.add_argument("instance", type=Path)
    parser.add_argument(
        "--solver", choices=[s.value for s in SolverName], default=SolverName.BRANCH_AND_BOUND.value
    )
    parser.add_argument(
        "--objective", choices=[o.value for o in Objective], default=Objective.MAX_CARDINALITY.value
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--time-limit-ms", type=int, default=0, help="0 means unlimited")
    parser.add_argument("--format", choices=("text", "json"), default="text")

    local = parser.add_argument_group("local search")
    local.add_argument("--steps", type=int, help="LTIU step limit")
    local.add_argument("--random-walk-p", type=float, help="LTIU random walk probability")
    local.add_argument("--population", type=int, help="GA population size")
    local.add_argument("--rounds", type=int, help="GA evolution rounds")
    local.add_argument("--crossover-p", type=float, help="GA crossover probability")
    local.add_argument("--mutation-p", type=float, help="GA mutation probability")
    parser.set_defaults(handler=_run)
