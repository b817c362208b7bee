"""Pabulib ``.pb`` participatory-budgeting format I/O.

A .pb file has three sections: META (key;value pairs), PROJECTS (a header
row of column names, then one row per project) and VOTES (header row, then
one row per voter; the ``vote`` column holds comma-separated project ids).
Projects are indexed by file order; costs, budget and all other columns
are kept in side tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ApprovalElection
from .preflib import ParseError


@dataclass(frozen=True)
class PabulibFile:
    """Parsed .pb instance: ballots plus project/meta side tables."""

    election: ApprovalElection
    meta: dict[str, str]
    projects: tuple[dict[str, str], ...]  # file order == candidate index
    voter_ids: tuple[str, ...]

    @property
    def budget(self) -> float | None:
        raw = self.meta.get("budget")
        return float(raw.replace(",", ".")) if raw else None

    @property
    def costs(self) -> tuple[float, ...]:
        return tuple(float(p.get("cost", "0") or 0) for p in self.projects)


def parse_pabulib(data: bytes | str) -> PabulibFile:
    """Parse a .pb file; raises ParseError on missing sections or votes
    referencing unknown project ids."""
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    section = None
    columns: list[str] = []
    meta: dict[str, str] = {}
    projects: list[dict[str, str]] = []
    votes: list[tuple[int, str, str]] = []  # (line, voter_id, vote field)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        upper = line.strip().upper()
        if upper in ("META", "PROJECTS", "VOTES"):
            section = upper
            columns = []
            continue
        if section is None:
            raise ParseError("content before the META section", line_no)
        cells = line.split(";")
        if not columns:
            columns = [c.strip() for c in cells]
            if section == "META" and columns[:2] != ["key", "value"]:
                raise ParseError("META header row must be 'key;value'", line_no)
            if section == "PROJECTS" and "project_id" not in columns:
                raise ParseError("PROJECTS header needs a project_id column", line_no)
            if section == "VOTES" and "voter_id" not in columns:
                raise ParseError("VOTES header needs a voter_id column", line_no)
            continue
        if section == "META":
            meta[cells[0].strip()] = cells[1].strip() if len(cells) > 1 else ""
        elif section == "PROJECTS":
            projects.append(dict(zip(columns, (c.strip() for c in cells))))
        else:
            row = dict(zip(columns, (c.strip() for c in cells)))
            votes.append((line_no, row.get("voter_id", ""), row.get("vote", "")))

    if section is None:
        raise ParseError("missing META section")
    if not projects:
        raise ParseError("missing or empty PROJECTS section")

    index = {p["project_id"]: i for i, p in enumerate(projects)}
    if len(index) != len(projects):
        raise ParseError("duplicate project_id in PROJECTS")
    ballots = []
    voter_ids = []
    for line_no, voter_id, vote_field in votes:
        ballot = set()
        for token in vote_field.split(","):
            token = token.strip()
            if not token:
                continue
            if token not in index:
                raise ParseError(f"vote references unknown project {token!r}", line_no)
            ballot.add(index[token])
        ballots.append(frozenset(ballot))
        voter_ids.append(voter_id)

    if "num_projects" in meta and int(meta["num_projects"]) != len(projects):
        raise ParseError(
            f"META says {meta['num_projects']} projects, file has {len(projects)}"
        )
    if "num_votes" in meta and int(meta["num_votes"]) != len(ballots):
        raise ParseError(
            f"META says {meta['num_votes']} votes, file has {len(ballots)}"
        )

    election = ApprovalElection(len(projects), tuple(ballots))
    return PabulibFile(election, meta, tuple(projects), tuple(voter_ids))


def serialize_pabulib(
    election: ApprovalElection,
    meta: dict[str, str] | None = None,
    projects: "tuple[dict[str, str], ...] | None" = None,
    voter_ids: "tuple[str, ...] | None" = None,
) -> bytes:
    """Write a canonical .pb file; ballots list project ids ascending."""
    m, n = election.num_candidates, election.num_voters
    if projects is None:
        projects = tuple({"project_id": str(i + 1), "cost": "1"} for i in range(m))
    if len(projects) != m:
        raise ValueError(f"expected {m} project rows, got {len(projects)}")
    if voter_ids is None:
        voter_ids = tuple(str(i + 1) for i in range(n))
    if len(voter_ids) != n:
        raise ValueError(f"expected {n} voter ids, got {len(voter_ids)}")

    out_meta = {"description": "synthetic approval election", "vote_type": "approval"}
    if meta:
        out_meta.update(meta)
    out_meta["num_projects"] = str(m)
    out_meta["num_votes"] = str(n)

    project_cols = sorted(
        {k for p in projects for k in p}, key=lambda k: (k != "project_id", k)
    )
    lines = ["META", "key;value"]
    lines.extend(f"{k};{v}" for k, v in out_meta.items())
    lines.append("PROJECTS")
    lines.append(";".join(project_cols))
    for p in projects:
        lines.append(";".join(p.get(col, "") for col in project_cols))
    lines.append("VOTES")
    lines.append("voter_id;vote")
    ids = [p["project_id"] for p in projects]
    for voter_id, ballot in zip(voter_ids, election.ballots):
        vote = ",".join(ids[c] for c in sorted(ballot))
        lines.append(f"{voter_id};{vote}")
    return ("\n".join(lines) + "\n").encode("utf-8")
