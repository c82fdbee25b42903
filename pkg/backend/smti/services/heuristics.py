"""
Heuristic Solvers

Deferred acceptance with random tie-breaking, the LTIU random-restart
stochastic hill climber, and the adapted genetic algorithm whose chromosomes
are stable matchings.
"""
import time
from collections import deque
from typing import Iterator, Optional, Sequence

import numpy as np

from smti.core.exceptions import NotBlockingPairError
from smti.core.logging import LoggerAdapter, get_logger
from smti.models.enums import Objective, SolverName
from smti.models.instance import AgentId, Instance, Matching
from smti.models.schemas import GaParams, LtiuParams, SearchStats, SolveReport
from smti.services.generator import make_rng
from smti.services.reports import build_report
from smti.services.stability import (
    BlockingPair,
    blocking_mask,
    eval_ltiu,
    is_blocking,
    is_stable,
    undominated_blocking_pairs,
)

logger = get_logger(__name__)

Seed = int | np.random.Generator

_LOG_EVERY_ROUNDS = 100


def _elapsed_ms(started: float) -> float:
    return (time.perf_counter() - started) * 1000.0


def _out_of_time(started: float, time_limit_ms: int) -> bool:
    return time_limit_ms > 0 and _elapsed_ms(started) >= time_limit_ms


# ============================================================================
# Deferred acceptance
# ============================================================================

def deferred_acceptance(inst: Instance, seed: Seed = 0) -> Matching:
    """
    Men-proposing Gale-Shapley over mutually acceptable pairs after breaking
    every tie by a seeded random strict refinement. The result is weakly stable.
    """
    rng = make_rng(seed)
    n = inst.n
    men_keys = rng.random((n, n))
    women_keys = rng.random((n, n))
    mrank, wrank = inst.mrank_rows, inst.wrank_rows

    proposals = [
        sorted(inst.men_candidates(x), key=lambda y, x=x: (mrank[x][y], men_keys[x, y]))
        for x in range(n)
    ]
    position: list[dict[int, int]] = []
    for y in range(n):
        order = sorted(inst.women_candidates(y), key=lambda x, y=y: (wrank[y][x], women_keys[y, x]))
        position.append({x: k for k, x in enumerate(order)})

    next_choice = [0] * n
    husband: list[Optional[int]] = [None] * n
    free = deque(range(n))
    while free:
        x = free.popleft()
        if next_choice[x] >= len(proposals[x]):
            continue
        y = proposals[x][next_choice[x]]
        next_choice[x] += 1
        current = husband[y]
        if current is None:
            husband[y] = x
        elif position[y][x] < position[y][current]:
            husband[y] = x
            free.append(current)
        else:
            free.append(x)

    return Matching(inst, ((x, y) for y, x in enumerate(husband) if x is not None))


def da_solve(inst: Instance, objective: Objective = Objective.MAX_CARDINALITY, seed: int = 0) -> SolveReport:
    started = time.perf_counter()
    mu = deferred_acceptance(inst, seed)
    stats = SearchStats(steps=1, elapsed_ms=_elapsed_ms(started))
    return build_report(SolverName.DEFERRED_ACCEPTANCE, inst, mu, objective, stats)


# ============================================================================
# Local search moves
# ============================================================================

def random_matching(inst: Instance, rng: np.random.Generator) -> Matching:
    """Uniform permutation restricted to its mutually acceptable pairs"""
    perm = rng.permutation(inst.n)
    mutual = inst.mutual
    return Matching(inst, ((x, int(y)) for x, y in enumerate(perm) if mutual[x, y]))


def apply_blocking_pair(inst: Instance, mu: Matching, bp: BlockingPair) -> Matching:
    """Marry the blocking pair; their former partners become single"""
    if is_blocking(inst, mu, bp.man, bp.woman) is None:
        raise NotBlockingPairError(bp.man, bp.woman)
    moved = mu.copy()
    moved.match(bp.man, bp.woman)
    return moved


def stabilize(inst: Instance, mu: Matching, max_moves: Optional[int] = None) -> tuple[Matching, bool]:
    """
    Greedy blocking-pair satisfaction: repeatedly apply the first undominated
    blocking pair. Returns (matching, reached_stability).
    """
    limit = inst.n * inst.n if max_moves is None else max_moves
    current = mu
    for _ in range(limit + 1):
        bps = undominated_blocking_pairs(inst, current)
        if not bps:
            return current, True
        current = apply_blocking_pair(inst, current, bps[0])
    return current, False


# ============================================================================
# LTIU
# ============================================================================

class LtiuSolver:
    """Random-restart stochastic hill climbing on singles + blocking pairs"""

    def __init__(
        self,
        inst: Instance,
        params: LtiuParams,
        objective: Objective = Objective.MAX_CARDINALITY,
    ):
        self.inst = inst
        self.params = params
        self.objective = objective
        self.rng = make_rng(params.seed)
        self.log = LoggerAdapter(logger, {"solver": SolverName.LTIU.value, "n": inst.n})

    def _pick(self, options: Sequence[Matching]) -> Matching:
        return options[int(self.rng.integers(len(options)))]

    def search(self) -> tuple[Matching, int, SearchStats]:
        """Run the hill climber; returns (best matching, its eval, stats)"""
        inst, rng, p = self.inst, self.rng, self.params.random_walk_p
        started = time.perf_counter()

        mu = random_matching(inst, rng)
        mu_eval = eval_ltiu(inst, mu)
        best, best_eval = mu, mu_eval
        step = 0
        restarts = 0
        timed_out = False

        while step < self.params.step_limit:
            if _out_of_time(started, self.params.time_limit_ms):
                timed_out = True
                break
            if mu_eval == 0:
                best, best_eval = mu, mu_eval
                break

            bps = undominated_blocking_pairs(inst, mu)
            if not bps:
                if mu_eval < best_eval:
                    best, best_eval = mu, mu_eval
                mu = random_matching(inst, rng)
                mu_eval = eval_ltiu(inst, mu)
                restarts += 1
                self.log.debug("Restart", extra={"extra_fields": {"step": step, "best_eval": best_eval}})
            else:
                neighbors = [apply_blocking_pair(inst, mu, bp) for bp in bps]
                if rng.random() < p:
                    mu = self._pick(neighbors)
                    mu_eval = eval_ltiu(inst, mu)
                else:
                    evals = [eval_ltiu(inst, nb) for nb in neighbors]
                    lowest = min(evals)
                    if mu_eval > lowest:
                        choices = [k for k, e in enumerate(evals) if e == lowest]
                        k = choices[int(rng.integers(len(choices)))]
                    else:
                        k = int(rng.integers(len(neighbors)))
                    mu, mu_eval = neighbors[k], evals[k]
            step += 1

        # The last visited matching competes with the incumbent at exhaustion
        if mu_eval < best_eval:
            best, best_eval = mu, mu_eval

        stats = SearchStats(
            steps=step, restarts=restarts, elapsed_ms=_elapsed_ms(started), timed_out=timed_out
        )
        return best, best_eval, stats

    def solve(self) -> SolveReport:
        best, raw_eval, stats = self.search()
        final, stable = stabilize(self.inst, best)
        stabilized_by = "blocking-pair-moves"
        if not stable:
            final = deferred_acceptance(self.inst, self.params.seed)
            stabilized_by = "deferred-acceptance"
        elif final is best:
            stabilized_by = None

        report = build_report(
            SolverName.LTIU, self.inst, final, self.objective, stats,
            raw_eval=raw_eval, final_eval=eval_ltiu(self.inst, final), stabilized_by=stabilized_by,
        )
        self.log.info(
            "LTIU finished",
            extra={"extra_fields": {
                "steps": stats.steps, "restarts": stats.restarts, "raw_eval": raw_eval,
                "cardinality": report.cardinality, "elapsed_ms": round(stats.elapsed_ms, 3)
            }}
        )
        return report


def ltiu_solve(
    inst: Instance,
    params: Optional[LtiuParams] = None,
    objective: Objective = Objective.MAX_CARDINALITY,
) -> SolveReport:
    return LtiuSolver(inst, params or LtiuParams(), objective).solve()


# ============================================================================
# Genetic algorithm operators
# ============================================================================

def selection_probabilities(fitness: Sequence[float]) -> np.ndarray:
    """chance(i) = fitness(i) / sum of fitness; uniform when all fitness is zero"""
    values = np.asarray(fitness, dtype=float)
    total = values.sum()
    if total <= 0:
        return np.full(values.size, 1.0 / values.size)
    return values / total


def cycle_crossover(inst: Instance, parent_a: Matching, parent_b: Matching, seed: Seed = 0) -> Matching:
    """
    Child of parent_a that takes parent_b's partners along one cycle (or chain)
    of men: starting at a random man where the parents differ, he takes his
    b-wife, whose a-husband must then take his own b-wife, and so on until the
    cycle closes or a b-wife is free in parent_a. A child with any blocking
    pair is discarded in favour of a clone of parent_a.
    """
    rng = make_rng(seed)
    differing = [x for x in range(inst.n) if parent_a.wife(x) != parent_b.wife(x)]
    if not differing:
        return parent_a.copy()

    start = differing[int(rng.integers(len(differing)))]
    chain = [start]
    x = start
    while True:
        y = parent_b.wife(x)
        if y is None:
            break
        x = parent_a.husband(y)
        if x is None or x == start:
            break
        chain.append(x)

    child = parent_a.copy()
    for x in chain:
        child.unmatch(AgentId.man(x))
    for x in chain:
        y = parent_b.wife(x)
        if y is not None:
            child.match(x, y)

    if not is_stable(inst, child):
        return parent_a.copy()
    return child


def _pareto_moves(inst: Instance, mu: Matching, rng: np.random.Generator) -> Iterator[list[tuple[int, int]]]:
    """
    Candidate reassignments that add one couple while nobody already matched
    ends up worse off: a single-single acceptable pair first, then length-2
    exchanges through an agent who is indifferent (or better off) between
    partners.
    """
    mrank, wrank = inst.mrank_rows, inst.wrank_rows
    n = inst.n
    single_men = [x for x in rng.permutation(n).tolist() if mu.wife(x) is None]
    single_women = [y for y in rng.permutation(n).tolist() if mu.husband(y) is None]

    for x in single_men:
        for y in inst.men_candidates(x):
            if mu.husband(y) is None:
                yield [(x, y)]

    # single man x takes y; her husband h moves to a free woman he likes as much
    for x in single_men:
        for y in inst.men_candidates(x):
            h = mu.husband(y)
            if h is None or wrank[y][x] > wrank[y][h]:
                continue
            for y2 in inst.men_candidates(h):
                if mu.husband(y2) is None and mrank[h][y2] <= mrank[h][y]:
                    yield [(h, y2), (x, y)]

    # single woman y takes x; his wife w moves to a free man she likes as much
    for y in single_women:
        for x in inst.women_candidates(y):
            w = mu.wife(x)
            if w is None or mrank[x][y] > mrank[x][w]:
                continue
            for x2 in inst.women_candidates(w):
                if mu.wife(x2) is None and wrank[w][x2] <= wrank[w][x]:
                    yield [(x2, w), (x, y)]


def mutate_pareto(inst: Instance, mu: Matching, seed: Seed = 0) -> Matching:
    """
    One pass of Pareto-improvement search: the first move that grows the
    matching without creating a new blocking pair is applied; otherwise mu is
    returned unchanged (as a copy).
    """
    rng = make_rng(seed)
    before = blocking_mask(inst, mu)
    for move in _pareto_moves(inst, mu, rng):
        trial = mu.copy()
        for x, y in move:
            trial.match(x, y)
        if trial.cardinality <= mu.cardinality:
            continue
        if not (blocking_mask(inst, trial) & ~before).any():
            return trial
    return mu.copy()


# ============================================================================
# Genetic algorithm
# ============================================================================

class GeneticSolver:
    """Elitist GA over stable matchings; fitness is the number of couples"""

    def __init__(
        self,
        inst: Instance,
        params: GaParams,
        objective: Objective = Objective.MAX_CARDINALITY,
    ):
        self.inst = inst
        self.params = params
        self.objective = objective
        self.rng = make_rng(params.seed)
        self.log = LoggerAdapter(logger, {"solver": SolverName.GENETIC.value, "n": inst.n})

    def initial_population(self) -> list[Matching]:
        """deferred_acceptance(inst, seed) first, the rest drawn from the solver's stream"""
        population = [deferred_acceptance(self.inst, self.params.seed)]
        population += [
            deferred_acceptance(self.inst, self.rng) for _ in range(self.params.population_size - 1)
        ]
        return population

    def evolve(self, population: list[Matching]) -> list[Matching]:
        """One round: crossover, mutation, truncation to the fittest"""
        inst, rng, params = self.inst, self.rng, self.params
        size = params.population_size

        temporary = [mu.copy() for mu in population]
        probabilities = selection_probabilities([mu.cardinality for mu in population])
        for _ in range(size // 2):
            if rng.random() < params.crossover_p:
                a, b = rng.choice(size, size=2, p=probabilities)
                temporary.append(cycle_crossover(inst, population[a], population[b], rng))

        for k, solution in enumerate(temporary):
            if rng.random() < params.mutation_p:
                temporary[k] = mutate_pareto(inst, solution, rng)

        # stable sort: earlier (parent) copies win ties
        temporary.sort(key=lambda mu: -mu.cardinality)
        return temporary[:size]

    def solve(self) -> SolveReport:
        started = time.perf_counter()
        population = self.initial_population()
        rounds = 0
        timed_out = False
        for _ in range(self.params.evolution_rounds):
            if _out_of_time(started, self.params.time_limit_ms):
                timed_out = True
                break
            population = self.evolve(population)
            rounds += 1
            if rounds % _LOG_EVERY_ROUNDS == 0:
                self.log.debug(
                    "Evolution round",
                    extra={"extra_fields": {"round": rounds, "best": population[0].cardinality}}
                )

        best = max(population, key=lambda mu: mu.cardinality)
        stats = SearchStats(rounds=rounds, elapsed_ms=_elapsed_ms(started), timed_out=timed_out)
        report = build_report(SolverName.GENETIC, self.inst, best, self.objective, stats)
        self.log.info(
            "GA finished",
            extra={"extra_fields": {
                "rounds": rounds, "cardinality": report.cardinality,
                "elapsed_ms": round(stats.elapsed_ms, 3)
            }}
        )
        return report


def ga_solve(
    inst: Instance,
    params: Optional[GaParams] = None,
    objective: Objective = Objective.MAX_CARDINALITY,
) -> SolveReport:
    return GeneticSolver(inst, params or GaParams(), objective).solve()
