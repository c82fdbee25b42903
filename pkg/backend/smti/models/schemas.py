from pathlib import Path
from typing import Any, List, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    field_serializer,
    field_validator,
    model_validator,
)

from smti.core.config import settings
from smti.models.enums import Objective, SolverName
from smti.models.instance import Matching

SEED_BOUND = 2**64


# Generator Schemas
class GenParams(BaseModel):
    """Random instance parameters: size, incompleteness p1, ties p2"""
    model_config = ConfigDict(frozen=True)

    n: PositiveInt
    p1: float = Field(0.0, ge=0.0, lt=1.0)
    p2: float = Field(0.0, ge=0.0, le=1.0)
    seed: int = Field(0, ge=0, lt=SEED_BOUND)


# Solver Parameter Schemas
class LtiuParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    step_limit: int = Field(default_factory=lambda: settings.LTIU_STEP_LIMIT, ge=0)
    random_walk_p: float = Field(default_factory=lambda: settings.LTIU_RANDOM_WALK_P, ge=0.0, le=1.0)
    seed: int = Field(0, ge=0, lt=SEED_BOUND)
    time_limit_ms: int = Field(default_factory=lambda: settings.DEFAULT_TIME_LIMIT_MS, ge=0)


class GaParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    population_size: int = Field(default_factory=lambda: settings.GA_POPULATION_SIZE, ge=2)
    evolution_rounds: PositiveInt = Field(default_factory=lambda: settings.GA_EVOLUTION_ROUNDS)
    crossover_p: float = Field(default_factory=lambda: settings.GA_CROSSOVER_P, ge=0.0, le=1.0)
    mutation_p: float = Field(default_factory=lambda: settings.GA_MUTATION_P, ge=0.0, le=1.0)
    seed: int = Field(0, ge=0, lt=SEED_BOUND)
    time_limit_ms: int = Field(default_factory=lambda: settings.DEFAULT_TIME_LIMIT_MS, ge=0)


# Solve Report Schemas
class SearchStats(BaseModel):
    nodes_explored: int = 0
    steps: int = 0
    restarts: int = 0
    rounds: int = 0
    elapsed_ms: float = 0.0
    timed_out: bool = False


class SolveReport(BaseModel):
    """Outcome of one solver call"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    solver: SolverName
    objective: Objective
    matching: Matching
    cost: int
    cardinality: int
    optimal: bool = False  # certificate: cost is the optimum over all weakly stable matchings
    stable: bool
    stats: SearchStats = Field(default_factory=SearchStats)
    raw_eval: Optional[int] = None  # local search: eval of the matching before stabilization
    final_eval: Optional[int] = None
    stabilized_by: Optional[str] = None

    @field_serializer("matching")
    def serialize_matching(self, matching: Matching) -> List[List[int]]:
        return [[x, y] for x, y in matching.pairs()]


# Benchmark Schemas
class BenchConfig(BaseModel):
    """Experiment grid over (n, p1, p2) with a list of solvers"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    n_values: List[PositiveInt]
    p1_start: float = Field(0.1, ge=0.0, lt=1.0)
    p1_stop: float = Field(0.8, ge=0.0, lt=1.0)
    p1_step: float = Field(0.1, gt=0.0)
    p2_start: float = Field(0.1, ge=0.0, le=1.0)
    p2_stop: float = Field(0.9, ge=0.0, le=1.0)
    p2_step: float = Field(0.1, gt=0.0)
    replicates: PositiveInt = 10
    solvers: List[SolverName]
    objective: Objective = Objective.MAX_CARDINALITY
    time_limit_ms: int = Field(default_factory=lambda: settings.DEFAULT_TIME_LIMIT_MS, ge=0)
    base_seed: int = Field(0, ge=0, lt=SEED_BOUND)
    output: Path = Path("bench.csv")
    jobs: PositiveInt = Field(default_factory=lambda: settings.BENCH_JOBS)

    ltiu_steps: int = Field(default_factory=lambda: settings.LTIU_STEP_LIMIT, ge=0)
    ltiu_random_walk_p: float = Field(default_factory=lambda: settings.LTIU_RANDOM_WALK_P, ge=0.0, le=1.0)
    ga_population: int = Field(default_factory=lambda: settings.GA_POPULATION_SIZE, ge=2)
    ga_rounds: PositiveInt = Field(default_factory=lambda: settings.GA_EVOLUTION_ROUNDS)
    ga_crossover_p: float = Field(default_factory=lambda: settings.GA_CROSSOVER_P, ge=0.0, le=1.0)
    ga_mutation_p: float = Field(default_factory=lambda: settings.GA_MUTATION_P, ge=0.0, le=1.0)

    @field_validator("n_values", "solvers", mode="before")
    @classmethod
    def split_comma_list(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @model_validator(mode="after")
    def check_grid(self) -> "BenchConfig":
        if self.p1_start > self.p1_stop:
            raise ValueError("p1_start must not exceed p1_stop")
        if self.p2_start > self.p2_stop:
            raise ValueError("p2_start must not exceed p2_stop")
        if not self.solvers:
            raise ValueError("at least one solver is required")
        if not self.n_values:
            raise ValueError("at least one n is required")
        if SolverName.BRUTE_FORCE in self.solvers and max(self.n_values) > settings.BRUTE_FORCE_MAX_N:
            raise ValueError(
                f"solver bf needs n <= {settings.BRUTE_FORCE_MAX_N}, got n={max(self.n_values)}"
            )
        return self

    @staticmethod
    def _grid(start: float, stop: float, step: float) -> List[float]:
        count = int(round((stop - start) / step)) + 1
        return [round(start + k * step, 10) for k in range(count) if start + k * step <= stop + 1e-9]

    def p1_values(self) -> List[float]:
        return self._grid(self.p1_start, self.p1_stop, self.p1_step)

    def p2_values(self) -> List[float]:
        return self._grid(self.p2_start, self.p2_stop, self.p2_step)
