"""
Pytest Configuration and Fixtures

Provides the hand-checked instances used across the suite, random instance
helpers, and a settings override for small solver budgets.
"""
import pytest

from smti.models.instance import Instance
from smti.models.schemas import GenParams
from smti.services.generator import generate


def make_instance(men, women) -> Instance:
    """Shorthand for Instance.from_preference_lists"""
    return Instance.from_preference_lists(men, women)


def random_instance(n: int, p1: float, p2: float, seed: int) -> Instance:
    return generate(GenParams(n=n, p1=p1, p2=p2, seed=seed))


@pytest.fixture
def single_pair():
    """n=1, m0 and w0 accept each other"""
    return make_instance([[[0]]], [[[0]]])


@pytest.fixture
def one_sided():
    """m0 ranks w0 but w0 ranks only m1; (m1, w1) is the one mutual pair"""
    return make_instance([[[0]], [[1]]], [[[1]], [[1]]])


@pytest.fixture
def woman_prefers():
    """
    m0: w0=1 w1=2   m1: w0=1
    w0: m1=1 m0=2   w1: m0=1

    Under {(m0, w0)} the only blocking pair is (m1, w0), case A3c.
    """
    return make_instance(
        [[[0], [1]], [[0]]],
        [[[1], [0]], [[0]]],
    )


@pytest.fixture
def man_first():
    """
    m0: w0=1 w1=2   m1: w0=1
    w0: m0=1 m1=2   w1: m0=1

    The unique stable matching is {(m0, w0)}.
    """
    return make_instance(
        [[[0], [1]], [[0]]],
        [[[0], [1]], [[0]]],
    )


@pytest.fixture
def all_ties():
    """n=2, everybody ranks everybody at level 1"""
    return make_instance([[[0, 1]], [[0, 1]]], [[[0, 1]], [[0, 1]]])


@pytest.fixture
def no_mutual_pairs():
    """n=2, acceptability never reciprocated"""
    return make_instance([[[0]], [[1]]], [[[1]], [[0]]])


@pytest.fixture
def strict_instance():
    """Classical 3x3 stable marriage, strict and complete"""
    return random_instance(3, 0.0, 0.0, seed=11)


@pytest.fixture
def small_corpus():
    """Deterministic mix of small instances over the p1/p2 grid"""
    corpus = []
    for k, n in enumerate((3, 4, 5)):
        for p1 in (0.1, 0.4, 0.7):
            for p2 in (0.1, 0.5, 0.9):
                corpus.append(random_instance(n, p1, p2, seed=1000 * k + int(100 * p1) + int(10 * p2)))
    return corpus
