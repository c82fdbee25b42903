"""
Unit Tests for the Instance and Matching models

Tests rank-table validation, preference semantics, matching mutation and the
injectivity / acceptability invariants.
"""
import pickle

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from smti.core.exceptions import (
    EmptyPreferenceListError,
    IndexOutOfRangeError,
    InvalidInstanceError,
    NotAcceptableError,
    UnrankedAgentError,
)
from smti.models.instance import AgentId, Instance, Matching

from tests.conftest import make_instance, random_instance

M = AgentId.man
W = AgentId.woman


@pytest.mark.unit
class TestInstanceValidation:
    """Rank tables must describe a valid SMTI instance"""

    def test_single_pair_instance(self, single_pair):
        """Test the single-pair market has size one and rank one on both sides"""
        assert single_pair.n == 1
        assert single_pair.rank(M(0), 0) == 1
        assert single_pair.rank(W(0), 0) == 1

    def test_rank_tables_are_read_only(self, single_pair):
        """Test the rank tables cannot be written through"""
        with pytest.raises(ValueError):
            single_pair.mrank[0, 0] = 2

    def test_empty_preference_list_rejected(self):
        """Test an empty list raises EmptyPreferenceListError naming the agent"""
        with pytest.raises(EmptyPreferenceListError) as exc:
            Instance([[1, 0], [0, 0]], [[1, 0], [0, 1]])
        assert exc.value.details["agent"] == "m1"

    def test_gap_in_levels_rejected(self):
        """Test skipped rank levels are rejected"""
        with pytest.raises(InvalidInstanceError):
            Instance([[1, 3, 0], [1, 0, 0], [1, 0, 0]], [[1, 0, 0], [1, 0, 0], [1, 0, 0]])

    def test_levels_must_start_at_one(self):
        """Test rank levels starting above one are rejected"""
        with pytest.raises(InvalidInstanceError):
            Instance([[2]], [[1]])

    def test_rank_above_n_rejected(self):
        """Test ranks above n are rejected"""
        with pytest.raises(InvalidInstanceError):
            Instance([[1, 5], [1, 0]], [[1, 0], [1, 0]])

    def test_shape_mismatch_rejected(self):
        """Test rank tables of different shapes are rejected"""
        with pytest.raises(InvalidInstanceError):
            Instance([[1]], [[1, 0], [0, 1]])

    def test_duplicate_partner_in_lists_rejected(self):
        """Test a partner listed twice is rejected"""
        with pytest.raises(InvalidInstanceError):
            make_instance([[[0], [0]]], [[[0]]])

    def test_out_of_range_partner_in_lists_rejected(self):
        """Test a partner index outside the market is rejected"""
        with pytest.raises(InvalidInstanceError):
            make_instance([[[3]]], [[[0]]])

    def test_preference_list_groups(self, woman_prefers):
        """Test preference lists come back as tie groups in rank order"""
        assert woman_prefers.preference_list(M(0)) == [[0], [1]]
        assert woman_prefers.preference_list(W(0)) == [[1], [0]]
        assert woman_prefers.list_length(M(1)) == 1

    def test_candidates_sorted_by_rank_then_index(self, all_ties):
        """Test candidates are ordered by rank, then index"""
        assert all_ties.men_candidates(0) == (0, 1)
        assert all_ties.women_candidates(1) == (0, 1)

    def test_transposed_swaps_roles(self, woman_prefers):
        """Test transposing swaps the rank tables and is an involution"""
        swapped = woman_prefers.transposed()
        assert np.array_equal(swapped.mrank, woman_prefers.wrank)
        assert np.array_equal(swapped.wrank, woman_prefers.mrank)
        assert swapped.transposed() == woman_prefers

    def test_pickle_round_trip(self, woman_prefers):
        """Test instances survive pickling for worker processes"""
        assert pickle.loads(pickle.dumps(woman_prefers)) == woman_prefers


@pytest.mark.unit
class TestPreferenceSemantics:
    """acceptable() and at_least_as_good()"""

    def test_mutual_acceptance(self, single_pair):
        """Test a pair ranking each other is acceptable"""
        assert single_pair.acceptable(0, 0) is True

    def test_one_sided_acceptance_is_not_acceptable(self, one_sided):
        """Test one-sided acceptance is not acceptance"""
        assert one_sided.rank(M(0), 0) == 1
        assert one_sided.rank(W(0), 0) is None
        assert one_sided.acceptable(0, 0) is False
        assert one_sided.acceptable(1, 1) is True

    def test_ranks_need_not_agree(self):
        """Test a pair stays acceptable when the two ranks differ"""
        inst = make_instance([[[0], [1]], [[0]]], [[[1]], [[0], [1]]])
        # m0 ranks w1 second, w1 ranks m0 first
        assert inst.rank(M(0), 1) == 2
        assert inst.rank(W(1), 0) == 1
        assert inst.acceptable(0, 1) is True

    def test_acceptable_index_out_of_range(self, single_pair):
        """Test an out-of-range index raises IndexOutOfRangeError"""
        with pytest.raises(IndexOutOfRangeError):
            single_pair.acceptable(0, 1)

    def test_strictly_better_is_at_least_as_good(self, woman_prefers):
        """Test a strictly preferred partner is at least as good"""
        assert woman_prefers.at_least_as_good(M(0), W(0), W(1)) is True

    def test_tie_is_at_least_as_good(self, all_ties):
        """Test a tied partner is at least as good"""
        assert all_ties.at_least_as_good(W(0), M(1), M(0)) is True

    def test_strictly_worse_is_not(self, woman_prefers):
        """Test a strictly worse partner is not at least as good"""
        assert woman_prefers.at_least_as_good(M(0), W(1), W(0)) is False

    def test_unranked_candidate_raises(self, woman_prefers):
        """Test comparing an unranked partner raises UnrankedAgentError"""
        with pytest.raises(UnrankedAgentError):
            woman_prefers.at_least_as_good(M(1), W(1), W(0))

    def test_same_side_comparison_raises(self, woman_prefers):
        """Test comparing an agent of the same sex raises UnrankedAgentError"""
        with pytest.raises(UnrankedAgentError):
            woman_prefers.at_least_as_good(M(0), M(1), W(0))

    @given(seed=st.integers(min_value=0, max_value=2**32), n=st.integers(1, 5))
    @hyp_settings(max_examples=40, deadline=None)
    def test_at_least_as_good_is_reflexive_and_transitive(self, seed, n):
        """Test at_least_as_good is a preorder on every agent's ranked partners"""
        inst = random_instance(n, 0.4, 0.6, seed)
        agents = [(M(i), W) for i in range(n)] + [(W(i), M) for i in range(n)]
        for agent, other in agents:
            ranked = [other(k) for k in range(n) if inst.rank(agent, k) is not None]
            for a in ranked:
                assert inst.at_least_as_good(agent, a, a)
            for a in ranked:
                for b in ranked:
                    for c in ranked:
                        if inst.at_least_as_good(agent, a, b) and inst.at_least_as_good(agent, b, c):
                            assert inst.at_least_as_good(agent, a, c)


@pytest.mark.unit
class TestMatching:
    """Matching mutation keeps the matching injective and acceptable"""

    def test_match_sets_both_partners(self, all_ties):
        """Test match records the couple on both sides"""
        mu = Matching(all_ties)
        mu.match(0, 0)
        assert mu.partner_of(M(0)) == W(0)
        assert mu.partner_of(W(0)) == M(0)
        assert mu.cardinality == 1

    def test_rematch_woman_divorces_previous_husband(self, all_ties):
        """Test matching a taken woman frees her husband"""
        mu = Matching(all_ties, [(0, 0)])
        mu.match(1, 0)
        assert mu.is_single(M(0))
        assert mu.husband(0) == 1
        assert len(mu) == 1

    def test_rematch_man_frees_previous_wife(self, all_ties):
        """Test matching a taken man frees his wife"""
        mu = Matching(all_ties, [(0, 0)])
        mu.match(0, 1)
        assert mu.is_single(W(0))
        assert mu.wife(0) == 1

    def test_unmatch_single_is_noop(self, all_ties):
        """Test unmatching a single agent changes nothing"""
        mu = Matching(all_ties)
        mu.unmatch(M(0))
        assert mu.pairs() == []

    def test_unmatch_by_woman(self, all_ties):
        """Test unmatching a woman frees her husband too"""
        mu = Matching(all_ties, [(1, 0)])
        mu.unmatch(W(0))
        assert mu.is_single(M(1))

    def test_match_not_acceptable_raises(self, one_sided):
        """Test matching a non-mutual pair raises NotAcceptableError"""
        mu = Matching(one_sided)
        with pytest.raises(NotAcceptableError):
            mu.match(0, 0)
        assert mu.cardinality == 0

    def test_partner_of_out_of_range(self, single_pair):
        """Test partner_of rejects an index outside the market"""
        with pytest.raises(IndexOutOfRangeError):
            Matching(single_pair).partner_of(W(3))

    def test_copy_is_independent(self, all_ties):
        """Test changes to a copy leave the original alone"""
        mu = Matching(all_ties, [(0, 0)])
        clone = mu.copy()
        clone.match(1, 0)
        assert mu.wife(0) == 0
        assert clone.wife(0) is None

    def test_arrays_and_counts(self, all_ties):
        """Test the array views and counters of a partial matching"""
        mu = Matching(all_ties, [(1, 0)])
        assert mu.wife_array().tolist() == [-1, 0]
        assert mu.husband_array().tolist() == [1, -1]
        assert mu.single_count() == 2
        assert not mu.is_perfect()
        assert mu.assignment() == (None, 0)

    @given(
        seed=st.integers(min_value=0, max_value=2**32),
        moves=st.lists(
            st.tuples(st.booleans(), st.integers(0, 4), st.integers(0, 4)), max_size=40
        ),
    )
    @hyp_settings(max_examples=60, deadline=None)
    def test_random_operations_preserve_invariants(self, seed, moves):
        """Test random match and unmatch sequences keep the matching injective, acceptable and symmetric"""
        inst = random_instance(5, 0.3, 0.4, seed)
        mu = Matching(inst)
        for is_match, x, y in moves:
            if is_match:
                if inst.acceptable(x, y):
                    mu.match(x, y)
            else:
                mu.unmatch(M(x))

        wives = [y for y in mu.assignment() if y is not None]
        assert len(wives) == len(set(wives))
        for x, y in mu.pairs():
            assert inst.acceptable(x, y)
            assert mu.husband(y) == x
        for k in range(5):
            for agent in (M(k), W(k)):
                partner = mu.partner_of(agent)
                if partner is not None:
                    assert mu.partner_of(partner) == agent
