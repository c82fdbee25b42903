"""
Large-corpus checks

Exact solvers against the brute-force oracle, stability of every solver's
output, heuristic quality bounds and the LTIU running-time trend. All marked
slow; run with `pytest -m slow`.
"""
import time

import numpy as np
import pytest

from smti.models.enums import Objective
from smti.models.schemas import GaParams, LtiuParams
from smti.services.exact import branch_and_bound, brute_force, stability_row_violations
from smti.services.generator import derive_seed
from smti.services.heuristics import da_solve, deferred_acceptance, ga_solve, ltiu_solve
from smti.services.stability import is_stable

from tests.conftest import random_instance

P1_GRID = [round(0.1 * k, 1) for k in range(1, 9)]
P2_GRID = [round(0.1 * k, 1) for k in range(1, 10)]


def oracle_corpus():
    """Two replicates per (n, p1, p2) for n in 4..6, one for n = 7"""
    for n in (4, 5, 6, 7):
        replicates = 1 if n == 7 else 2
        for i, p1 in enumerate(P1_GRID):
            for j, p2 in enumerate(P2_GRID):
                for r in range(replicates):
                    yield random_instance(n, p1, p2, derive_seed(n, i, j, r))


@pytest.fixture(scope="module")
def corpus():
    return list(oracle_corpus())


@pytest.mark.integration
@pytest.mark.slow
class TestOracleEquivalence:
    """Branch and bound reproduces the brute-force optimum"""

    def test_corpus_size(self, corpus):
        """Test the oracle corpus holds at least 500 instances"""
        assert len(corpus) >= 500

    @pytest.mark.parametrize("objective", list(Objective))
    def test_costs_match(self, corpus, objective):
        """Test branch and bound matches brute force on every corpus instance"""
        mismatches = []
        for k, inst in enumerate(corpus):
            exact = branch_and_bound(inst, objective)
            oracle = brute_force(inst, objective)
            assert exact.optimal
            if exact.cost != oracle.cost:
                mismatches.append((k, exact.cost, oracle.cost))
            assert stability_row_violations(inst, exact.matching.assignment()) == []
        assert mismatches == []


@pytest.mark.integration
@pytest.mark.slow
class TestSoundness:
    """Every returned matching is weakly stable"""

    def test_all_solvers_stable(self):
        """Test every solver returns stable matchings over many seeds"""
        checks = 0
        for k in range(420):
            n = 3 + k % 6
            inst = random_instance(n, 0.1 + 0.1 * (k % 8), 0.1 + 0.1 * (k % 9), seed=k)
            reports = [
                da_solve(inst, seed=k),
                ltiu_solve(inst, LtiuParams(step_limit=60, seed=k)),
                ga_solve(inst, GaParams(population_size=6, evolution_rounds=8, seed=k)),
                branch_and_bound(inst, Objective.MAX_CARDINALITY),
            ]
            if n <= 7:
                reports.append(brute_force(inst, Objective.SEX_EQUAL))
            for report in reports:
                assert is_stable(inst, report.matching)
                checks += 1
            for seed in range(20):
                assert is_stable(inst, deferred_acceptance(inst, seed))
                checks += 1
        assert checks >= 10_000


@pytest.mark.integration
@pytest.mark.slow
class TestHeuristicQuality:
    """Heuristics never beat the exact maximum; GA never falls below DA"""

    def test_cardinality_bounds(self, corpus):
        """Test heuristic cardinalities sit between deferred acceptance and the optimum"""
        for k, inst in enumerate(corpus[::3]):
            optimum = branch_and_bound(inst, Objective.MAX_CARDINALITY).cost
            ltiu = ltiu_solve(inst, LtiuParams(step_limit=100, seed=k))
            ga = ga_solve(inst, GaParams(population_size=10, evolution_rounds=50, seed=k))
            assert ltiu.cardinality <= optimum
            assert deferred_acceptance(inst, k).cardinality <= ga.cardinality <= optimum


@pytest.mark.integration
@pytest.mark.slow
class TestLtiuTrend:
    """Sparser lists make LTIU slower at n = 50"""

    def test_time_grows_with_p1(self):
        """Test LTIU takes longer on sparser lists"""
        means = {}
        for p1 in (0.1, 0.8):
            times = []
            for r in range(10):
                inst = random_instance(50, p1, 0.5, derive_seed(50, int(p1 * 10), 5, r))
                started = time.perf_counter()
                ltiu_solve(inst, LtiuParams(step_limit=5000, seed=r))
                times.append(time.perf_counter() - started)
            means[p1] = float(np.mean(times))
        assert means[0.8] > means[0.1]
