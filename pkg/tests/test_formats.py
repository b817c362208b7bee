"""PrefLib and Pabulib I/O: spec examples plus round-trip properties."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefforge import (
    ApprovalElection,
    OrdinalElection,
    ParseError,
    parse_pabulib,
    parse_preflib,
    reference_election,
    sample_impartial,
    sample_p_ic,
    serialize_pabulib,
    serialize_preflib,
)

SOC_BODY = """\
# FILE NAME: tiny.soc
# TITLE: tiny
# DATA TYPE: soc
# NUMBER ALTERNATIVES: 3
# NUMBER VOTERS: 3
# NUMBER UNIQUE ORDERS: 2
# ALTERNATIVE NAME 1: A
# ALTERNATIVE NAME 2: B
# ALTERNATIVE NAME 3: C
2: 1,2,3
1: 3,2,1
"""


class TestPreflibParse:
    def test_counts_expand(self):
        parsed = parse_preflib(SOC_BODY.encode(), kind="soc")
        assert parsed.num_candidates == 3 and parsed.num_voters == 3
        assert parsed.names == ("A", "B", "C")
        e = parsed.to_ordinal()
        assert [tuple(v) for v in e] == [(0, 1, 2), (0, 1, 2), (2, 1, 0)]

    def test_empty_voter_section(self):
        text = (
            "# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 2\n# NUMBER VOTERS: 0\n"
            "# NUMBER UNIQUE ORDERS: 0\n"
        )
        e = parse_preflib(text).to_ordinal()
        assert e.num_voters == 0 and e.num_candidates == 2

    def test_missing_header_is_error(self):
        with pytest.raises(ParseError):
            parse_preflib("# DATA TYPE: soc\n1: 1,2\n")

    def test_out_of_range_reports_line(self):
        text = SOC_BODY.replace("1: 3,2,1", "1: 4,2,1")
        with pytest.raises(ParseError) as err:
            parse_preflib(text)
        assert err.value.line == 11
        assert "out of range" in str(err.value)

    def test_count_total_mismatch(self):
        text = SOC_BODY.replace("# NUMBER VOTERS: 3", "# NUMBER VOTERS: 5")
        with pytest.raises(ParseError, match="sum to 3"):
            parse_preflib(text)

    def test_repeated_candidate_in_row(self):
        text = SOC_BODY.replace("1: 3,2,1", "1: 3,3,1")
        with pytest.raises(ParseError, match="twice"):
            parse_preflib(text)

    def test_kind_mismatch(self):
        with pytest.raises(ParseError, match="DATA TYPE"):
            parse_preflib(SOC_BODY, kind="toi")

    def test_ties_parse_as_toc(self):
        text = (
            "# DATA TYPE: toc\n# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 2\n"
            "2: {1,2},3\n"
        )
        parsed = parse_preflib(text)
        assert parsed.rows == ((2, ((0, 1), (2,))),)
        with pytest.raises(ValueError, match="ties"):
            parsed.to_ordinal()

    def test_ties_rejected_in_soc(self):
        text = (
            "# DATA TYPE: soc\n# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 1\n"
            "1: {1,2},3\n"
        )
        with pytest.raises(ParseError, match="tie group"):
            parse_preflib(text)


class TestPreflibSerialize:
    def test_identity_two_by_two(self):
        e = OrdinalElection(2, np.array([[0, 1], [0, 1]]))
        body = serialize_preflib(e).decode()
        assert body.splitlines()[-1] == "2: 1,2"

    def test_antagonism_aggregates_in_pairs(self):
        e = reference_election("AN", 3, 4)
        lines = serialize_preflib(e).decode().splitlines()
        assert lines[-2:] == ["2: 1,2,3", "2: 3,2,1"]

    def test_serialize_parse_serialize_is_stable(self):
        e = sample_impartial(4, 25, seed=11)
        payload = serialize_preflib(e)
        again = serialize_preflib(parse_preflib(payload))
        assert payload == again

    def test_round_trip_is_identity(self):
        e = sample_impartial(5, 40, seed=3)
        assert parse_preflib(serialize_preflib(e)).to_ordinal() == e

    def test_approval_round_trips_as_toi(self):
        e = sample_p_ic(5, 30, p=0.4, seed=9)
        payload = serialize_preflib(e)
        parsed = parse_preflib(payload)
        assert parsed.kind == "toi"
        assert parsed.to_approval() == e

    def test_empty_ballot_round_trips(self):
        e = ApprovalElection(3, (frozenset(), frozenset({0, 2})))
        assert parse_preflib(serialize_preflib(e)).to_approval() == e


PB_MINIMAL = """\
META
key;value
num_projects;2
num_votes;1
budget;1000
PROJECTS
project_id;cost
10;600
20;400
VOTES
voter_id;vote
1;10,20
"""


class TestPabulib:
    def test_minimal_file(self):
        parsed = parse_pabulib(PB_MINIMAL)
        assert parsed.election == ApprovalElection(2, (frozenset({0, 1}),))
        assert parsed.budget == 1000.0
        assert parsed.costs == (600.0, 400.0)

    def test_empty_vote_field(self):
        text = PB_MINIMAL.replace("1;10,20", "1;")
        parsed = parse_pabulib(text)
        assert parsed.election.ballots == (frozenset(),)

    def test_unknown_project_is_error(self):
        text = PB_MINIMAL.replace("1;10,20", "1;99")
        with pytest.raises(ParseError, match="unknown project"):
            parse_pabulib(text)

    def test_missing_section_is_error(self):
        with pytest.raises(ParseError, match="PROJECTS"):
            parse_pabulib("META\nkey;value\nnum_projects;1\n")

    def test_meta_count_mismatch(self):
        text = PB_MINIMAL.replace("num_projects;2", "num_projects;5")
        with pytest.raises(ParseError, match="5 projects"):
            parse_pabulib(text)

    def test_round_trip_is_identity(self):
        e = sample_p_ic(6, 20, p=0.3, seed=4)
        assert parse_pabulib(serialize_pabulib(e)).election == e

    def test_serialize_parse_serialize_is_stable(self):
        e = sample_p_ic(4, 10, p=0.5, seed=21)
        payload = serialize_pabulib(e)
        parsed = parse_pabulib(payload)
        again = serialize_pabulib(
            parsed.election, meta=parsed.meta, projects=parsed.projects,
            voter_ids=parsed.voter_ids,
        )
        assert payload == again


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 25), st.integers(0, 10_000))
def test_preflib_round_trip_random(m, n, seed):
    e = sample_impartial(m, n, seed)
    assert parse_preflib(serialize_preflib(e)).to_ordinal() == e


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 6),
    st.integers(0, 25),
    st.floats(0.0, 1.0),
    st.integers(0, 10_000),
)
def test_pabulib_round_trip_random(m, n, p, seed):
    e = sample_p_ic(m, n, p, seed)
    assert parse_pabulib(serialize_pabulib(e)).election == e
