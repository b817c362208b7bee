"""PrefLib text format I/O (2023 revision, ``#``-prefixed metadata keys).

Supports the four ranking kinds: soc (strict complete), soi (strict
incomplete), toc (ties complete), toi (ties incomplete).  Approval
elections are encoded as toi files with a single tied top group (the
approved candidates) and the rest unranked.

Serialization is canonical and deterministic: fixed header order, no
timestamps, identical consecutive votes aggregated into one ``count:``
line.  ``serialize(parse(serialize(e)))`` is byte-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .core import ApprovalElection, OrdinalElection

KINDS = ("soc", "soi", "toc", "toi")


class ParseError(ValueError):
    """Malformed election file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# a row is (count, groups); groups are tie groups in preference order, each
# a tuple of 0-based candidate indices
Row = tuple[int, tuple[tuple[int, ...], ...]]


@dataclass(frozen=True)
class PreflibFile:
    """Parsed PrefLib file: rows plus the candidate-name side table."""

    kind: str
    num_candidates: int
    num_voters: int
    rows: tuple[Row, ...]
    names: tuple[str, ...]
    metadata: dict[str, str] = field(default_factory=dict)

    def to_ordinal(self) -> OrdinalElection:
        """Expand multiplicities into an OrdinalElection (strict complete
        rows required)."""
        votes = []
        for count, groups in self.rows:
            if any(len(g) != 1 for g in groups) or len(groups) != self.num_candidates:
                raise ValueError(
                    "file contains ties or incomplete rankings; "
                    "only strict complete orders convert to an ordinal election"
                )
            vote = [g[0] for g in groups]
            votes.extend([vote] * count)
        return OrdinalElection(self.num_candidates, np.array(votes, dtype=np.int64))

    def to_approval(self) -> ApprovalElection:
        """Read rows as approval ballots: the first tie group approves."""
        ballots = []
        for count, groups in self.rows:
            if len(groups) > 2 or (
                len(groups) == 2
                and sum(len(g) for g in groups) != self.num_candidates
            ):
                raise ValueError(
                    "rows must be '{approved}' or '{approved},{rest}' "
                    "to read the file as an approval election"
                )
            ballot = frozenset(groups[0]) if groups else frozenset()
            ballots.extend([ballot] * count)
        return ApprovalElection(self.num_candidates, tuple(ballots))


def _split_ranking(text: str, line_no: int) -> tuple[tuple[int, ...], ...]:
    """Parse '1,{2,3},4' into 1-based tie groups (converted to 0-based later)."""
    groups: list[tuple[int, ...]] = []
    i, n = 0, len(text)
    while i < n:
        if text[i] == ",":
            i += 1
            continue
        if text[i] == "{":
            end = text.find("}", i)
            if end < 0:
                raise ParseError("unterminated tie group", line_no)
            inner = text[i + 1 : end].strip()
            members = tuple(
                _parse_alt(tok, line_no) for tok in inner.split(",") if tok.strip()
            )
            groups.append(members)
            i = end + 1
        else:
            end = text.find(",", i)
            if end < 0:
                end = n
            groups.append((_parse_alt(text[i:end], line_no),))
            i = end
    return tuple(g for g in groups if g)


def _parse_alt(token: str, line_no: int) -> int:
    token = token.strip()
    if not re.fullmatch(r"\d+", token):
        raise ParseError(f"bad alternative {token!r}", line_no)
    return int(token)


def parse_preflib(data: bytes | str, kind: str | None = None) -> PreflibFile:
    """Parse a PrefLib file; ``kind`` overrides / checks the DATA TYPE key.

    Raises ParseError (with line number) on malformed headers,
    out-of-range alternatives, or count/total mismatches.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if kind is not None and kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")

    metadata: dict[str, str] = {}
    names: dict[int, str] = {}
    rows: list[Row] = []
    m: int | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if ":" not in body:
                raise ParseError("metadata line without ':'", line_no)
            key, _, value = body.partition(":")
            key, value = key.strip().upper(), value.strip()
            match = re.fullmatch(r"ALTERNATIVE NAME (\d+)", key)
            if match:
                names[int(match.group(1))] = value
            else:
                metadata[key] = value
            continue
        if ":" not in line:
            raise ParseError("expected 'count: ranking'", line_no)
        count_str, _, ranking = line.partition(":")
        count_str = count_str.strip()
        if not re.fullmatch(r"\d+", count_str):
            raise ParseError(f"bad vote count {count_str!r}", line_no)
        count = int(count_str)
        groups_1based = _split_ranking(ranking.strip(), line_no)
        if m is None:
            if "NUMBER ALTERNATIVES" not in metadata:
                raise ParseError(
                    "NUMBER ALTERNATIVES must appear before vote lines", line_no
                )
            m = _header_int(metadata, "NUMBER ALTERNATIVES", line_no)
        seen: set[int] = set()
        groups = []
        for g in groups_1based:
            for c in g:
                if not 1 <= c <= m:
                    raise ParseError(f"alternative {c} out of range 1..{m}", line_no)
                if c in seen:
                    raise ParseError(f"alternative {c} ranked twice", line_no)
                seen.add(c)
            groups.append(tuple(x - 1 for x in g))
        rows.append((count, tuple(groups)))

    if "NUMBER ALTERNATIVES" not in metadata or "NUMBER VOTERS" not in metadata:
        raise ParseError("missing NUMBER ALTERNATIVES / NUMBER VOTERS header")
    m = _header_int(metadata, "NUMBER ALTERNATIVES", None)
    n = _header_int(metadata, "NUMBER VOTERS", None)
    if m < 1:
        raise ParseError("NUMBER ALTERNATIVES must be >= 1")
    total = sum(count for count, _ in rows)
    if total != n:
        raise ParseError(f"NUMBER VOTERS is {n} but vote counts sum to {total}")
    if "NUMBER UNIQUE ORDERS" in metadata:
        unique = _header_int(metadata, "NUMBER UNIQUE ORDERS", None)
        distinct = len({groups for _, groups in rows})
        if unique != distinct:
            raise ParseError(
                f"NUMBER UNIQUE ORDERS is {unique} but file has {distinct}"
            )

    file_kind = metadata.get("DATA TYPE", "").lower() or None
    if kind is not None and file_kind is not None and kind != file_kind:
        raise ParseError(f"requested kind {kind} but DATA TYPE is {file_kind}")
    effective = kind or file_kind
    if effective is None:
        raise ParseError("no DATA TYPE header and no kind argument")
    if effective not in KINDS:
        raise ParseError(f"unsupported DATA TYPE {effective!r}")
    _check_rows_match_kind(rows, effective, m)

    name_table = tuple(names.get(i, str(i)) for i in range(1, m + 1))
    extra = {
        k: v
        for k, v in metadata.items()
        if k
        not in (
            "NUMBER ALTERNATIVES",
            "NUMBER VOTERS",
            "NUMBER UNIQUE ORDERS",
            "DATA TYPE",
        )
    }
    return PreflibFile(effective, m, n, tuple(rows), name_table, extra)


def _header_int(metadata: dict[str, str], key: str, line_no) -> int:
    try:
        return int(metadata[key])
    except ValueError:
        raise ParseError(f"{key} is not an integer", line_no) from None


def _check_rows_match_kind(rows: list[Row], kind: str, m: int) -> None:
    for count, groups in rows:
        ranked = sum(len(g) for g in groups)
        has_ties = any(len(g) > 1 for g in groups)
        if kind in ("soc", "soi") and has_ties:
            raise ParseError(f"tie group in a {kind} file")
        if kind in ("soc", "toc") and ranked != m:
            raise ParseError(f"incomplete order in a {kind} file")


def _format_group(group: tuple[int, ...]) -> str:
    inner = ",".join(str(c + 1) for c in group)
    return inner if len(group) == 1 else "{" + inner + "}"


def serialize_preflib(
    election: OrdinalElection | ApprovalElection | PreflibFile,
    names: "tuple[str, ...] | list[str] | None" = None,
    title: str = "election",
    file_name: str | None = None,
) -> bytes:
    """Write a canonical PrefLib file.

    OrdinalElection becomes soc; ApprovalElection becomes toi (approved
    set as one tied top group, sorted ascending); a PreflibFile is
    re-emitted as-is.
    """
    if isinstance(election, PreflibFile):
        kind = election.kind
        m, n = election.num_candidates, election.num_voters
        rows = list(election.rows)
        names = names or election.names
        title = election.metadata.get("TITLE", title)
        file_name = file_name or election.metadata.get("FILE NAME")
    elif isinstance(election, OrdinalElection):
        kind = "soc"
        m, n = election.num_candidates, election.num_voters
        rows = _aggregate(
            tuple(tuple((c,) for c in vote) for vote in election)
        )
    elif isinstance(election, ApprovalElection):
        kind = "toi"
        m, n = election.num_candidates, election.num_voters
        rows = _aggregate(
            tuple(
                (tuple(sorted(ballot)),) if ballot else ()
                for ballot in election.ballots
            )
        )
    else:
        raise TypeError(f"cannot serialize {type(election).__name__}")

    if names is None:
        names = tuple(str(i) for i in range(1, m + 1))
    if len(names) != m:
        raise ValueError(f"expected {m} candidate names, got {len(names)}")

    lines = [
        f"# FILE NAME: {file_name or f'{title}.{kind}'}",
        f"# TITLE: {title}",
        f"# DATA TYPE: {kind}",
        f"# NUMBER ALTERNATIVES: {m}",
        f"# NUMBER VOTERS: {n}",
        f"# NUMBER UNIQUE ORDERS: {len({groups for _, groups in rows})}",
    ]
    lines.extend(f"# ALTERNATIVE NAME {i + 1}: {nm}" for i, nm in enumerate(names))
    for count, groups in rows:
        lines.append(f"{count}: " + ",".join(_format_group(g) for g in groups))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _aggregate(vote_rows: tuple[tuple[tuple[int, ...], ...], ...]) -> list[Row]:
    """Aggregate identical consecutive votes into (count, groups) rows."""
    rows: list[Row] = []
    for groups in vote_rows:
        if rows and rows[-1][1] == groups:
            rows[-1] = (rows[-1][0] + 1, groups)
        else:
            rows.append((1, groups))
    return rows
