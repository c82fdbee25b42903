"""
Exact Solvers

Exhaustive enumeration for tiny instances (the test oracle) and a depth-first
branch-and-bound over the 0/1 model: one variable x_ij per mutually acceptable
pair, at most one partner per agent, and for every acceptable pair (i, j)

    1 - sum(x_iq : q ranked by i at j's level or better)
      <= sum(x_pj : p ranked by j at i's level or better)

which is exactly "(i, j) does not block".
"""
import time
from typing import Optional, Sequence

import numpy as np

from smti.core.config import settings
from smti.core.exceptions import InstanceTooLargeError
from smti.core.logging import LoggerAdapter, get_logger
from smti.models.enums import Objective, SolverName
from smti.models.instance import Instance, Matching
from smti.models.schemas import SearchStats, SolveReport
from smti.services.heuristics import deferred_acceptance
from smti.services.reports import build_report
from smti.services.stability import cost, is_stable

logger = get_logger(__name__)


class _SearchTimeout(Exception):
    pass


def _score(objective: Objective, cardinality: int, men_sum: int, women_sum: int) -> int:
    """Objective turned into a value to minimize"""
    if objective is Objective.MAX_CARDINALITY:
        return -cardinality
    if objective is Objective.EGALITARIAN:
        return men_sum + women_sum
    return abs(men_sum - women_sum)


def _assignment_is_stable(inst: Instance, wife: Sequence[Optional[int]], husband: Sequence[Optional[int]]) -> bool:
    mrank, wrank = inst.mrank_rows, inst.wrank_rows
    for x in range(inst.n):
        current = wife[x]
        for y in inst.men_candidates(x):
            if current is not None and mrank[x][y] >= mrank[x][current]:
                break
            h = husband[y]
            if h is None or wrank[y][x] < wrank[y][h]:
                return False
    return True


def stability_row_violations(inst: Instance, assignment: Sequence[Optional[int]]) -> list[tuple[int, int]]:
    """Acceptable pairs (i, j) whose stability inequality fails for the 0/1 assignment"""
    n = inst.n
    x = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(assignment):
        if j is not None:
            x[i, j] = 1
    violations = []
    for i, j in zip(*np.nonzero(inst.mutual)):
        at_least_as_good_women = inst.mutual[i] & (inst.mrank[i] <= inst.mrank[i, j])
        at_least_as_good_men = inst.mutual[:, j] & (inst.wrank[j] <= inst.wrank[j, i])
        lhs = 1 - int(x[i, at_least_as_good_women].sum())
        rhs = int(x[at_least_as_good_men, j].sum())
        if lhs > rhs:
            violations.append((int(i), int(j)))
    return violations


# ============================================================================
# Brute force
# ============================================================================

def brute_force(inst: Instance, objective: Objective, max_n: Optional[int] = None) -> SolveReport:
    """
    Enumerate every injective partial map over acceptable pairs, keep the
    stable ones and return an optimum. Among optima the lexicographically
    smallest per-man vector wins, a single man counting as index n.
    """
    limit = settings.BRUTE_FORCE_MAX_N if max_n is None else max_n
    n = inst.n
    if n > limit:
        raise InstanceTooLargeError(n, limit)

    started = time.perf_counter()
    mrank, wrank = inst.mrank_rows, inst.wrank_rows
    options = [sorted(inst.men_candidates(x)) for x in range(n)]
    wife: list[Optional[int]] = [None] * n
    husband: list[Optional[int]] = [None] * n
    best: dict = {"score": None, "assignment": None}
    leaves = 0

    def visit(k: int, cardinality: int, men_sum: int, women_sum: int) -> None:
        nonlocal leaves
        if k == n:
            leaves += 1
            if not _assignment_is_stable(inst, wife, husband):
                return
            score = _score(objective, cardinality, men_sum, women_sum)
            if best["score"] is None or score < best["score"]:
                best["score"] = score
                best["assignment"] = tuple(wife)
            return
        for y in options[k]:
            if husband[y] is not None:
                continue
            wife[k], husband[y] = y, k
            visit(k + 1, cardinality + 1, men_sum + mrank[k][y], women_sum + wrank[y][k])
            wife[k], husband[y] = None, None
        visit(k + 1, cardinality, men_sum, women_sum)

    visit(0, 0, 0, 0)

    mu = Matching.from_assignment(inst, best["assignment"])
    stats = SearchStats(nodes_explored=leaves, elapsed_ms=(time.perf_counter() - started) * 1000.0)
    logger.info(
        "Brute force finished",
        extra={"extra_fields": {
            "n": n, "objective": objective.value, "leaves": leaves, "score": best["score"]
        }}
    )
    return build_report(SolverName.BRUTE_FORCE, inst, mu, objective, stats, optimal=True)


# ============================================================================
# Branch and bound
# ============================================================================

class BranchAndBoundSolver:
    """
    Depth-first search over men in index order. Each man takes a free
    acceptable woman (best rank first, index breaking ties) or stays single.

    A man whose assignment leaves him wanting woman j (she is strictly better
    than his wife, or he is single) puts a requirement on j: she must end with
    a partner she ranks at least as well as him. req[j] keeps the strictest
    such rank; a node is pruned when a taken woman violates it or a free one
    has no undecided acceptable man left who satisfies it.
    """

    def __init__(self, inst: Instance, objective: Objective, time_limit_ms: int = 0):
        self.inst = inst
        self.objective = objective
        self.time_limit_ms = time_limit_ms
        self.log = LoggerAdapter(logger, {"solver": SolverName.BRANCH_AND_BOUND.value, "n": inst.n})

        n = inst.n
        self.none = n + 1
        mrank, wrank = inst.mrank_rows, inst.wrank_rows
        self.mrank, self.wrank = mrank, wrank

        # best rank woman j can still get from men >= k
        self.suffix_best = [[self.none] * (n + 1) for _ in range(n)]
        for j in range(n):
            for k in range(n - 1, -1, -1):
                here = wrank[j][k] if inst.mutual[k, j] else self.none
                self.suffix_best[j][k] = min(here, self.suffix_best[j][k + 1])

        # man p's signed (mrank - wrank) range over his options, single = 0
        lo = [0] * (n + 1)
        hi = [0] * (n + 1)
        for p in range(n - 1, -1, -1):
            deltas = [mrank[p][y] - wrank[y][p] for y in inst.men_candidates(p)]
            lo[p] = lo[p + 1] + min([0, *deltas])
            hi[p] = hi[p + 1] + max([0, *deltas])
        self.delta_lo, self.delta_hi = lo, hi

        with_options = [0] * (n + 1)
        for p in range(n - 1, -1, -1):
            with_options[p] = with_options[p + 1] + (1 if inst.men_candidates(p) else 0)
        self.men_with_options = with_options

        self.wife: list[Optional[int]] = [None] * n
        self.husband: list[Optional[int]] = [None] * n
        self.req = [self.none] * n
        self.nodes = 0
        self.started = 0.0
        self.best_score: Optional[int] = None
        self.best_assignment: Optional[tuple[Optional[int], ...]] = None

    # ------------------------------------------------------------------

    def _feasible(self, k: int) -> bool:
        """Every requirement can still be met once men 0..k are decided"""
        for j, need in enumerate(self.req):
            if need == self.none:
                continue
            h = self.husband[j]
            if h is not None:
                if self.wrank[j][h] > need:
                    return False
            elif self.suffix_best[j][k + 1] > need:
                return False
        return True

    def _lower_bound(self, k: int, cardinality: int, men_sum: int, women_sum: int) -> int:
        n = self.inst.n
        if self.objective is Objective.MAX_CARDINALITY:
            free_women = n - cardinality
            return -(cardinality + min(self.men_with_options[k + 1], free_women))

        if self.objective is Objective.EGALITARIAN:
            forced = 0
            for j, need in enumerate(self.req):
                if need == self.none or self.husband[j] is not None:
                    continue
                forced += min(
                    (self.mrank[p][j] + self.wrank[j][p]
                     for p in self.inst.women_candidates(j) if p > k and self.wrank[j][p] <= need),
                    default=0,
                )
            return men_sum + women_sum + forced

        gap = men_sum - women_sum
        low, high = gap + self.delta_lo[k + 1], gap + self.delta_hi[k + 1]
        if low > 0:
            return low
        if high < 0:
            return -high
        return 0

    def _leaf(self, cardinality: int, men_sum: int, women_sum: int) -> None:
        score = _score(self.objective, cardinality, men_sum, women_sum)
        if self.best_score is not None and score >= self.best_score:
            return
        mu = Matching.from_assignment(self.inst, self.wife)
        if not is_stable(self.inst, mu):
            return
        self.best_score = score
        self.best_assignment = tuple(self.wife)

    def _descend(self, k: int, cardinality: int, men_sum: int, women_sum: int) -> None:
        self.nodes += 1
        if (
            self.time_limit_ms > 0
            and self.nodes % settings.TIMEOUT_CHECK_INTERVAL == 0
            and (time.perf_counter() - self.started) * 1000.0 >= self.time_limit_ms
        ):
            raise _SearchTimeout()
        if k == self.inst.n:
            self._leaf(cardinality, men_sum, women_sum)
            return

        candidates = self.inst.men_candidates(k)
        for y in (*candidates, None):
            if y is not None and self.husband[y] is not None:
                continue
            saved: list[tuple[int, int]] = []
            limit = self.mrank[k][y] if y is not None else self.none
            for j in candidates:
                if self.mrank[k][j] >= limit:
                    break
                if self.wrank[j][k] < self.req[j]:
                    saved.append((j, self.req[j]))
                    self.req[j] = self.wrank[j][k]

            if y is None:
                next_state = (cardinality, men_sum, women_sum)
            else:
                self.wife[k], self.husband[y] = y, k
                next_state = (cardinality + 1, men_sum + self.mrank[k][y], women_sum + self.wrank[y][k])

            if self._feasible(k) and (
                self.best_score is None or self._lower_bound(k, *next_state) < self.best_score
            ):
                self._descend(k + 1, *next_state)

            if y is not None:
                self.wife[k], self.husband[y] = None, None
            for j, previous in reversed(saved):
                self.req[j] = previous

    # ------------------------------------------------------------------

    def solve(self) -> SolveReport:
        inst, objective = self.inst, self.objective
        self.started = time.perf_counter()

        incumbent = deferred_acceptance(inst, 0)
        men_sum = sum(self.mrank[x][y] for x, y in incumbent.pairs())
        women_sum = sum(self.wrank[y][x] for x, y in incumbent.pairs())
        self.best_score = _score(objective, incumbent.cardinality, men_sum, women_sum)
        self.best_assignment = incumbent.assignment()

        timed_out = False
        try:
            self._descend(0, 0, 0, 0)
        except _SearchTimeout:
            timed_out = True

        mu = Matching.from_assignment(inst, self.best_assignment)
        stats = SearchStats(
            nodes_explored=self.nodes,
            elapsed_ms=(time.perf_counter() - self.started) * 1000.0,
            timed_out=timed_out,
        )
        self.log.info(
            "Branch and bound finished",
            extra={"extra_fields": {
                "objective": objective.value, "nodes": self.nodes, "timed_out": timed_out,
                "cost": cost(inst, mu, objective), "elapsed_ms": round(stats.elapsed_ms, 3)
            }}
        )
        return build_report(
            SolverName.BRANCH_AND_BOUND, inst, mu, objective, stats, optimal=not timed_out
        )


def branch_and_bound(inst: Instance, objective: Objective, time_limit_ms: int = 0) -> SolveReport:
    """Optimal stable matching for the objective; time_limit_ms = 0 means unlimited"""
    return BranchAndBoundSolver(inst, objective, time_limit_ms).solve()
