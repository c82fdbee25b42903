"""
Solver dispatch shared by the solve command and the benchmark harness.
"""
from typing import Optional

from smti.core.exceptions import InvalidParameterError
from smti.core.logging import get_logger
from smti.models.enums import Objective, SolverName
from smti.models.instance import Instance
from smti.models.schemas import SEED_BOUND, GaParams, LtiuParams, SolveReport
from smti.services.exact import branch_and_bound, brute_force
from smti.services.heuristics import da_solve, ga_solve, ltiu_solve

logger = get_logger(__name__)


def run_solver(
    inst: Instance,
    solver: SolverName,
    objective: Objective,
    seed: int = 0,
    time_limit_ms: int = 0,
    ltiu: Optional[LtiuParams] = None,
    ga: Optional[GaParams] = None,
) -> SolveReport:
    """
    Run one solver on one instance.

    seed and time_limit_ms override the corresponding fields of the
    LTIU / GA parameter records; they are ignored by solvers without them.
    """
    logger.debug(
        "Dispatching solver",
        extra={"extra_fields": {
            "solver": solver.value, "objective": objective.value, "n": inst.n, "seed": seed
        }}
    )

    if time_limit_ms < 0:
        raise InvalidParameterError("time_limit_ms", time_limit_ms, "must be non-negative")
    if not 0 <= seed < SEED_BOUND:
        raise InvalidParameterError("seed", seed, "must be a 64-bit unsigned integer")
    overrides = {"seed": seed, "time_limit_ms": time_limit_ms}

    if solver is SolverName.BRUTE_FORCE:
        return brute_force(inst, objective)
    if solver is SolverName.BRANCH_AND_BOUND:
        return branch_and_bound(inst, objective, time_limit_ms)
    if solver is SolverName.DEFERRED_ACCEPTANCE:
        return da_solve(inst, objective, seed)
    if solver is SolverName.LTIU:
        params = LtiuParams(**{**(ltiu or LtiuParams()).model_dump(), **overrides})
        return ltiu_solve(inst, params, objective)
    params_ga = GaParams(**{**(ga or GaParams()).model_dump(), **overrides})
    return ga_solve(inst, params_ga, objective)
