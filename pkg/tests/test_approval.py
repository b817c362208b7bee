"""Approval cultures: exact-law oracles, structure, ballot rules."""

import numpy as np
import pytest

from prefforge import (
    BallotRule,
    MallowsSpec,
    NoiseSpec,
    PartyListSpec,
    ResamplingSpec,
    SpaceSpec,
    StructureWitness,
    sample_euclidean_approval,
    sample_interval,
    sample_mallows,
    sample_noise,
    sample_p_ic,
    sample_party_list,
    sample_resampling,
    truncate_to_approval,
    validate_structure,
)
from oracles import (
    empirical_ballot_distribution,
    noise_distribution,
    sample_noise_enumeration,
    tv_distance,
)


class TestPIC:
    def test_p_zero_and_one(self):
        empty = sample_p_ic(4, 10, 0.0, seed=0)
        assert all(b == frozenset() for b in empty.ballots)
        full = sample_p_ic(4, 10, 1.0, seed=0)
        assert all(b == frozenset(range(4)) for b in full.ballots)

    def test_mean_ballot_size(self):
        m, p = 20, 0.15
        e = sample_p_ic(m, 100_000, p, seed=1)
        mean = np.mean([len(b) for b in e.ballots])
        assert abs(mean - p * m) / (p * m) < 0.01

    def test_uniform_at_half(self):
        e = sample_p_ic(3, 40_000, 0.5, seed=2)
        exact = {}
        for bits in range(8):
            exact[frozenset(c for c in range(3) if bits >> c & 1)] = 1 / 8
        assert tv_distance(empirical_ballot_distribution(e), exact) <= 0.02

    def test_per_voter_variant(self):
        e = sample_p_ic(10, 20_000, 0.0, seed=3, per_voter=True)
        mean = np.mean([len(b) for b in e.ballots])
        assert mean == pytest.approx(5.0, abs=0.2)  # E[p] = 1/2

    def test_bad_p(self):
        with pytest.raises(ValueError):
            sample_p_ic(3, 5, 1.5, seed=0)


class TestResampling:
    def test_phi_zero_copies_central(self):
        e = sample_resampling(6, 50, ResamplingSpec(p=0.5, phi=0.0), seed=4)
        assert len(set(e.ballots)) == 1
        assert len(e.ballots[0]) == 3  # floor(p*m)

    def test_phi_one_is_p_ic(self):
        spec = ResamplingSpec(p=0.5, phi=1.0)
        e = sample_resampling(4, 40_000, spec, seed=5)
        exact = {}
        for bits in range(16):
            exact[frozenset(c for c in range(4) if bits >> c & 1)] = 1 / 16
        assert tv_distance(empirical_ballot_distribution(e), exact) <= 0.02

    @pytest.mark.parametrize("phi", [0.25, 0.5, 1.0])
    def test_mean_ballot_size_invariant(self, phi):
        m, p = 10, 0.5
        e = sample_resampling(m, 50_000, ResamplingSpec(p=p, phi=phi), seed=6)
        mean = np.mean([len(b) for b in e.ballots])
        assert abs(mean - p * m) / (p * m) < 0.01

    def test_explicit_central(self):
        central = frozenset({0, 2})
        e = sample_resampling(
            4, 30, ResamplingSpec(p=0.5, phi=0.0), seed=7, central=central
        )
        assert all(b == central for b in e.ballots)


class TestNoise:
    @pytest.mark.parametrize("metric", ["hamming", "jaccard"])
    def test_matches_exact_law(self, metric):
        m, phi = 4, 0.5
        central = frozenset({0, 1})
        spec = NoiseSpec(p=0.5, phi=phi, metric=metric)
        e = sample_noise(m, 40_000, spec, seed=8, central=central)
        exact = noise_distribution(m, central, phi, metric)
        assert tv_distance(empirical_ballot_distribution(e), exact) <= 0.02

    @pytest.mark.parametrize("metric", ["hamming", "jaccard"])
    def test_matches_enumeration_sampler(self, metric):
        m, phi = 4, 0.5
        central = frozenset({0, 1})
        spec = NoiseSpec(p=0.5, phi=phi, metric=metric)
        e = sample_noise(m, 40_000, spec, seed=9, central=central)
        reference = sample_noise_enumeration(m, central, phi, metric, 40_000, seed=10)
        ref_dist = {}
        for ballot in reference:
            ref_dist[ballot] = ref_dist.get(ballot, 0) + 1 / len(reference)
        assert tv_distance(empirical_ballot_distribution(e), ref_dist) <= 0.02

    def test_central_is_mode(self):
        central = frozenset({1, 3})
        for metric in ("hamming", "jaccard"):
            spec = NoiseSpec(p=0.5, phi=0.6, metric=metric)
            e = sample_noise(4, 30_000, spec, seed=11, central=central)
            dist = empirical_ballot_distribution(e)
            assert max(dist, key=dist.get) == central

    def test_phi_zero_is_point_mass(self):
        central = frozenset({0})
        for metric in ("hamming", "jaccard"):
            spec = NoiseSpec(p=0.25, phi=0.0, metric=metric)
            e = sample_noise(4, 100, spec, seed=12, central=central)
            assert all(b == central for b in e.ballots)

    def test_phi_one_hamming_is_half_ic(self):
        spec = NoiseSpec(p=0.5, phi=1.0, metric="hamming")
        e = sample_noise(3, 40_000, spec, seed=13)
        exact = {}
        for bits in range(8):
            exact[frozenset(c for c in range(3) if bits >> c & 1)] = 1 / 8
        assert tv_distance(empirical_ballot_distribution(e), exact) <= 0.02


class TestEuclideanApproval:
    def test_radius_covers_cube(self):
        rule = BallotRule.radius(2.0)  # >= sqrt(2), the unit-square diameter
        e, _, _ = sample_euclidean_approval(5, 20, SpaceSpec(dimension=2), rule, seed=14)
        assert all(b == frozenset(range(5)) for b in e.ballots)

    def test_top_m_is_full(self):
        rule = BallotRule.top(5)
        e, _, _ = sample_euclidean_approval(5, 20, SpaceSpec(dimension=2), rule, seed=15)
        assert all(len(b) == 5 for b in e.ballots)

    def test_top_x_larger_than_m_rejected(self):
        with pytest.raises(ValueError):
            sample_euclidean_approval(
                3, 5, SpaceSpec(dimension=1), BallotRule.top(4), seed=0
            )

    def test_candidate_top_x(self):
        rule = BallotRule.candidate_top(3)
        e, voters, cands = sample_euclidean_approval(
            4, 10, SpaceSpec(dimension=2), rule, seed=16
        )
        approvers = [sum(c in b for b in e.ballots) for c in range(4)]
        assert approvers == [3, 3, 3, 3]

    def test_candidate_top_x_needs_enough_voters(self):
        with pytest.raises(ValueError):
            sample_euclidean_approval(
                3, 2, SpaceSpec(dimension=1), BallotRule.candidate_top(3), seed=0
            )

    @pytest.mark.parametrize(
        "rule",
        [
            BallotRule.radius(0.3),
            BallotRule.top(3),
            BallotRule.top_uniform(1, 5),
            BallotRule.radius_uniform(0.05, 0.4),
            BallotRule.radius_nearest_multiple(1.5),
        ],
    )
    def test_ballots_distance_downward_closed(self, rule):
        e, voters, cands = sample_euclidean_approval(
            5, 60, SpaceSpec(dimension=2), rule, seed=17
        )
        for i, ballot in enumerate(e.ballots):
            dists = np.linalg.norm(cands - voters[i], axis=1)
            if not ballot:
                continue
            threshold = max(dists[c] for c in ballot)
            closer = {int(c) for c in range(5) if dists[c] < threshold}
            assert closer <= ballot

    def test_nearest_multiple_never_empty(self):
        rule = BallotRule.radius_nearest_multiple(1.0)
        e, _, _ = sample_euclidean_approval(4, 50, SpaceSpec(dimension=3), rule, seed=18)
        assert all(b for b in e.ballots)

    def test_top_normal_lengths(self):
        rule = BallotRule.top_normal(3, 1)
        e, _, _ = sample_euclidean_approval(6, 20_000, SpaceSpec(dimension=2), rule, seed=19)
        mean = np.mean([len(b) for b in e.ballots])
        assert mean == pytest.approx(3.0, abs=0.1)


class TestInterval:
    def test_ci_validates(self):
        for seed in range(5):
            e, witness = sample_interval(6, 40, "CI", seed=seed)
            assert witness.variant == "candidate_interval"
            assert validate_structure(e, witness)

    def test_vi_validates(self):
        for seed in range(5):
            e, witness = sample_interval(6, 40, "VI", seed=seed)
            assert witness.variant == "voter_interval"
            assert validate_structure(e, witness)

    def test_single_voter_ci_is_interval(self):
        e, witness = sample_interval(8, 1, "CI", seed=20)
        axis = witness.order
        positions = sorted(axis.index(c) for c in e.ballots[0])
        if positions:
            assert positions == list(range(positions[0], positions[-1] + 1))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            sample_interval(3, 3, "XY", seed=0)


class TestPartyList:
    def test_equal_or_disjoint(self):
        for variant, kwargs in (
            ("urn_parties", {"parties": 3, "alpha": 0.4}),
            ("uniform_groups", {"group_size": (2, 4), "party_candidates": (2, 3)}),
        ):
            spec = PartyListSpec(variant=variant, **kwargs)
            e = sample_party_list(30, 12, spec, seed=21)
            for b1 in e.ballots:
                for b2 in e.ballots:
                    assert b1 == b2 or not (b1 & b2)

    def test_urn_alpha_zero_is_uniform(self):
        spec = PartyListSpec(variant="urn_parties", parties=4, alpha=0.0)
        e = sample_party_list(8, 40_000, spec, seed=22)
        dist = empirical_ballot_distribution(e)
        assert len(dist) == 4
        for p in dist.values():
            assert p == pytest.approx(0.25, abs=0.02)

    def test_urn_repeat_probability(self):
        # g=2, alpha=1: second vote joins the first party w.p. (1+2)/(2+2)
        same = 0
        reps = 20_000
        spec = PartyListSpec(variant="urn_parties", parties=2, alpha=1.0)
        for i in range(reps):
            e = sample_party_list(4, 2, spec, seed=i)
            same += e.ballots[0] == e.ballots[1]
        assert same / reps == pytest.approx(3 / 4, abs=0.02)

    def test_leftover_candidates_discarded(self):
        spec = PartyListSpec(variant="urn_parties", parties=3, alpha=0.1)
        e = sample_party_list(11, 50, spec, seed=23)
        assert all(len(b) == 3 for b in e.ballots)  # floor(11/3)
        used = set().union(*e.ballots)
        assert len(used) <= 9

    def test_insufficient_candidates(self):
        spec = PartyListSpec(
            variant="uniform_groups", group_size=(1, 1), party_candidates=(5, 5)
        )
        with pytest.raises(ValueError, match="not enough candidates"):
            sample_party_list(8, 10, spec, seed=24)

    def test_party_list_is_ci_and_vi(self):
        spec = PartyListSpec(variant="urn_parties", parties=3, alpha=0.3)
        e = sample_party_list(9, 15, spec, seed=25)
        # candidate axis: group party members together (unapproved anywhere)
        parties = sorted(set(e.ballots) - {frozenset()}, key=sorted)
        axis = [c for party in parties for c in sorted(party)]
        axis += [c for c in range(9) if c not in set(axis)]
        assert validate_structure(
            e, StructureWitness("candidate_interval", order=tuple(axis))
        )
        # voter order: group voters of the same party together
        order = sorted(range(15), key=lambda i: (parties.index(e.ballots[i]), i))
        assert validate_structure(
            e, StructureWitness("voter_interval", order=tuple(order))
        )


class TestTruncation:
    def test_full_and_singleton(self):
        e = sample_mallows(5, 30, MallowsSpec(phi=0.3), seed=26)
        full = truncate_to_approval(e, BallotRule.top(5))
        assert all(len(b) == 5 for b in full.ballots)
        single = truncate_to_approval(e, BallotRule.top(1))
        assert all(len(b) == 1 for b in single.ballots)
        for i in range(30):
            assert single.ballots[i] == frozenset({e.vote(i)[0]})

    def test_mallows_phi_zero_fixed_x(self):
        central = (3, 1, 0, 2, 4)
        e = sample_mallows(5, 20, MallowsSpec(phi=0.0, central=central), seed=27)
        top2 = truncate_to_approval(e, BallotRule.top(2))
        assert all(b == frozenset({3, 1}) for b in top2.ballots)

    def test_requires_top_rule(self):
        e = sample_mallows(4, 5, MallowsSpec(phi=0.5), seed=28)
        with pytest.raises(ValueError):
            truncate_to_approval(e, BallotRule.radius(0.5))

    def test_normal_lengths_clipped(self):
        e = sample_mallows(4, 5_000, MallowsSpec(phi=1.0), seed=29)
        approvals = truncate_to_approval(e, BallotRule.top_normal(2, 5), seed=30)
        sizes = {len(b) for b in approvals.ballots}
        assert sizes <= set(range(5))
        assert 0 in sizes and 4 in sizes  # clipping reached both ends


@pytest.mark.parametrize(
    "culture,m,n,params",
    [
        ("p-ic", 6, 25, {"p": 0.3}),
        ("p-ic", 6, 25, {"p": 0.3, "per_voter": True}),
        ("resampling", 8, 25, {"p": 0.25, "phi": 0.6}),
        ("noise", 6, 25, {"p": 0.3, "phi": 0.5, "metric": "hamming"}),
        ("noise", 6, 25, {"p": 0.3, "phi": 0.5, "metric": "jaccard"}),
        ("euclidean-approval", 6, 25, {"rule": "radius", "dim": 2}),
        ("euclidean-approval", 6, 25, {"rule": "top", "top_x": 2, "dim": 1}),
        ("ci", 6, 25, {}),
        ("vi", 6, 25, {}),
        ("party-list-urn", 9, 25, {"parties": 3, "alpha": 0.4}),
        ("party-list-groups", 40, 10, {}),
        ("truncated", 6, 25, {"base": "mallows", "norm_phi": 0.5, "top_x": 3}),
    ],
)
def test_registry_determinism_approval(culture, m, n, params):
    from prefforge import sample, validate_structure

    a = sample(culture, m, n, 321, **params)
    b = sample(culture, m, n, 321, **params)
    assert a.election == b.election
    if a.witness is not None:
        assert validate_structure(a.election, a.witness)


def test_empty_ballots_are_legal_everywhere():
    rule = BallotRule.radius(0.01)
    e, _, _ = sample_euclidean_approval(4, 200, SpaceSpec(dimension=2), rule, seed=31)
    assert any(not b for b in e.ballots)
    # serialization still round-trips
    from prefforge import parse_pabulib, serialize_pabulib

    assert parse_pabulib(serialize_pabulib(e)).election == e
