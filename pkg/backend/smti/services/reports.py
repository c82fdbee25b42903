from typing import Any

from smti.models.enums import Objective, SolverName
from smti.models.instance import Instance, Matching
from smti.models.schemas import SearchStats, SolveReport
from smti.services.stability import cost, is_stable


def build_report(
    solver: SolverName,
    inst: Instance,
    mu: Matching,
    objective: Objective,
    stats: SearchStats,
    optimal: bool = False,
    **extra: Any,
) -> SolveReport:
    """Assemble a SolveReport, evaluating cost and stability of mu"""
    return SolveReport(
        solver=solver,
        objective=objective,
        matching=mu,
        cost=cost(inst, mu, objective),
        cardinality=mu.cardinality,
        optimal=optimal,
        stable=is_stable(inst, mu),
        stats=stats,
        **extra,
    )
