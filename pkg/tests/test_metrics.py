"""Distances: swap distance, ballot distances, and the isomorphic election
distance (exact vs. brute force, heuristic vs. exact)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefforge import (
    OrdinalElection,
    ballot_distance,
    election_distance_exact,
    election_distance_heuristic,
    swap_distance,
    vote_distance_matrix,
)
from oracles import brute_swap_distance, election_distance_brute


def random_election(m, n, rng):
    votes = np.array([rng.permutation(m) for _ in range(n)])
    return OrdinalElection(m, votes)


def relabel(e, rng):
    sigma = rng.permutation(e.num_candidates)
    votes = sigma[e.votes]
    return OrdinalElection(e.num_candidates, votes[rng.permutation(e.num_voters)])


class TestSwapDistance:
    def test_identity_is_zero(self):
        assert swap_distance((2, 0, 1), (2, 0, 1)) == 0

    def test_reverse_is_max(self):
        assert swap_distance((0, 1, 2, 3), (3, 2, 1, 0)) == 6

    def test_single_swap(self):
        assert swap_distance((0, 1, 2), (1, 0, 2)) == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            swap_distance((0, 1), (0, 1, 2))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 8), st.integers(0, 10_000))
    def test_agrees_with_brute_force(self, m, seed):
        rng = np.random.default_rng(seed)
        u = tuple(int(c) for c in rng.permutation(m))
        v = tuple(int(c) for c in rng.permutation(m))
        assert swap_distance(u, v) == brute_swap_distance(u, v)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 10_000))
    def test_metric_properties(self, m, seed):
        rng = np.random.default_rng(seed)
        u, v, w = (tuple(int(c) for c in rng.permutation(m)) for _ in range(3))
        assert swap_distance(u, v) == swap_distance(v, u) >= 0
        assert swap_distance(u, w) <= swap_distance(u, v) + swap_distance(v, w)
        assert swap_distance(u, v) <= m * (m - 1) // 2


class TestBallotDistance:
    def test_identical_is_zero(self):
        assert ballot_distance({0, 1}, {0, 1}, "hamming") == 0
        assert ballot_distance({0, 1}, {0, 1}, "jaccard") == 0

    def test_disjoint_jaccard_is_one(self):
        assert ballot_distance({0}, {1, 2}, "jaccard") == 1.0

    def test_overlap_example(self):
        assert ballot_distance({0, 1}, {1, 2}, "hamming") == 2
        assert ballot_distance({0, 1}, {1, 2}, "jaccard") == pytest.approx(2 / 3)

    def test_both_empty(self):
        assert ballot_distance(set(), set(), "jaccard") == 0.0
        assert ballot_distance(set(), set(), "hamming") == 0.0

    def test_ranges(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            m = 6
            u = {int(c) for c in rng.choice(m, rng.integers(0, m + 1), replace=False)}
            v = {int(c) for c in rng.choice(m, rng.integers(0, m + 1), replace=False)}
            assert 0 <= ballot_distance(u, v, "hamming") <= m
            assert 0.0 <= ballot_distance(u, v, "jaccard") <= 1.0


class TestVoteDistanceMatrix:
    def test_identity_election(self):
        e = OrdinalElection(3, np.tile([0, 1, 2], (5, 1)))
        D, mult = vote_distance_matrix(e)
        assert D.shape == (1, 1) and D[0, 0] == 0
        assert mult.tolist() == [5]

    def test_antagonism(self):
        e = OrdinalElection(3, np.array([[0, 1, 2], [0, 1, 2], [2, 1, 0], [2, 1, 0]]))
        D, mult = vote_distance_matrix(e)
        assert D.shape == (2, 2) and D[0, 1] == 3
        assert mult.tolist() == [2, 2]

    def test_matches_brute_force_without_dedup(self):
        e = random_election(4, 5, np.random.default_rng(3))
        D, mult = vote_distance_matrix(e, deduplicate=False)
        assert mult.tolist() == [1] * 5
        for i in range(5):
            for j in range(5):
                assert D[i, j] == brute_swap_distance(e.vote(i), e.vote(j))


class TestExactDistance:
    def test_matches_brute_force_on_small_pairs(self):
        rng = np.random.default_rng(12)
        for _ in range(30):
            e1 = random_election(3, 2, rng)
            e2 = random_election(3, 2, rng)
            assert election_distance_exact(e1, e2) == election_distance_brute(e1, e2)

    def test_self_distance_and_relabeling(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            e = random_election(4, 4, rng)
            assert election_distance_exact(e, e) == 0
            assert election_distance_exact(e, relabel(e, rng)) == 0

    def test_symmetry(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            e1, e2 = random_election(4, 3, rng), random_election(4, 3, rng)
            assert election_distance_exact(e1, e2) == election_distance_exact(e2, e1)

    def test_invariant_under_relabeling_either_argument(self):
        rng = np.random.default_rng(9)
        e1, e2 = random_election(4, 4, rng), random_election(4, 4, rng)
        base = election_distance_exact(e1, e2)
        for _ in range(5):
            assert election_distance_exact(relabel(e1, rng), e2) == base
            assert election_distance_exact(e1, relabel(e2, rng)) == base

    def test_triangle_inequality(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            a, b, c = (random_election(3, 3, rng) for _ in range(3))
            dab = election_distance_exact(a, b)
            dbc = election_distance_exact(b, c)
            dac = election_distance_exact(a, c)
            assert dac <= dab + dbc

    def test_size_mismatch(self):
        e1 = random_election(3, 3, np.random.default_rng(0))
        e2 = random_election(3, 4, np.random.default_rng(0))
        with pytest.raises(ValueError):
            election_distance_exact(e1, e2)

    def test_large_m_guarded(self):
        rng = np.random.default_rng(1)
        e1, e2 = random_election(9, 2, rng), random_election(9, 2, rng)
        with pytest.raises(ValueError, match="allow_large"):
            election_distance_exact(e1, e2)


class TestHeuristicDistance:
    def test_upper_bound_and_mostly_tight_at_m4(self):
        rng = np.random.default_rng(20)
        tight = 0
        for _ in range(40):
            e1, e2 = random_election(4, 5, rng), random_election(4, 5, rng)
            exact = election_distance_exact(e1, e2)
            upper = election_distance_heuristic(e1, e2, restarts=20, seed=0)
            assert upper >= exact
            tight += upper == exact
        assert tight >= 38  # >= 95% of pairs

    def test_finds_zero_on_relabeled_elections(self):
        rng = np.random.default_rng(21)
        hits = 0
        for _ in range(100):
            e = random_election(6, 10, rng)
            hits += election_distance_heuristic(e, relabel(e, rng), restarts=20) == 0
        assert hits >= 99

    def test_deterministic(self):
        rng = np.random.default_rng(22)
        e1, e2 = random_election(5, 8, rng), random_election(5, 8, rng)
        a = election_distance_heuristic(e1, e2, restarts=5, seed=3)
        b = election_distance_heuristic(e1, e2, restarts=5, seed=3)
        assert a == b
