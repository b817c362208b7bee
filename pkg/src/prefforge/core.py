"""Election data model and structural-domain validators.

Candidates are dense integer indices 0..m-1 throughout; display names live
in the file-format side tables, never in the election objects.  All types
are immutable after construction and every function here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

WITNESS_VARIANTS = (
    "single_peaked",
    "spoc",
    "single_crossing",
    "group_separable",
    "candidate_interval",
    "voter_interval",
)


def _check_permutation(order: Sequence[int], size: int, what: str) -> tuple[int, ...]:
    order = tuple(int(x) for x in order)
    if len(order) != size or sorted(order) != list(range(size)):
        raise ValueError(f"{what} must be a permutation of 0..{size - 1}, got {order}")
    return order


@dataclass(frozen=True, eq=False)
class OrdinalElection:
    """m candidates and n strict rankings, most-preferred first.

    ``votes`` is a read-only (n, m) integer array; each row is a
    permutation of 0..m-1.
    """

    num_candidates: int
    votes: np.ndarray

    def __post_init__(self):
        m = int(self.num_candidates)
        if m < 1:
            raise ValueError(f"num_candidates must be >= 1, got {m}")
        arr = np.asarray(self.votes, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, m)
        if arr.ndim != 2 or arr.shape[1] != m:
            raise ValueError(f"votes must have shape (n, {m}), got {arr.shape}")
        if arr.size and not np.array_equal(
            np.sort(arr, axis=1), np.broadcast_to(np.arange(m), arr.shape)
        ):
            raise ValueError("every vote must be a permutation of 0..m-1")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "num_candidates", m)
        object.__setattr__(self, "votes", arr)

    @property
    def m(self) -> int:
        return self.num_candidates

    @property
    def num_voters(self) -> int:
        return self.votes.shape[0]

    n = num_voters

    def vote(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.votes[i])

    def __iter__(self):
        return (self.vote(i) for i in range(self.num_voters))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrdinalElection):
            return NotImplemented
        return self.num_candidates == other.num_candidates and np.array_equal(
            self.votes, other.votes
        )

    def __repr__(self) -> str:
        return f"OrdinalElection(m={self.num_candidates}, n={self.num_voters})"


@dataclass(frozen=True, eq=False)
class ApprovalElection:
    """m candidates and n approval ballots (subsets of 0..m-1)."""

    num_candidates: int
    ballots: tuple[frozenset[int], ...]

    def __post_init__(self):
        m = int(self.num_candidates)
        if m < 1:
            raise ValueError(f"num_candidates must be >= 1, got {m}")
        clean = []
        for i, ballot in enumerate(self.ballots):
            b = frozenset(int(c) for c in ballot)
            if b and (min(b) < 0 or max(b) >= m):
                raise ValueError(f"ballot {i} contains candidates outside 0..{m - 1}")
            clean.append(b)
        object.__setattr__(self, "num_candidates", m)
        object.__setattr__(self, "ballots", tuple(clean))

    @property
    def m(self) -> int:
        return self.num_candidates

    @property
    def num_voters(self) -> int:
        return len(self.ballots)

    n = num_voters

    def membership_matrix(self) -> np.ndarray:
        """(n, m) boolean matrix; row i marks the candidates voter i approves."""
        mat = np.zeros((self.num_voters, self.num_candidates), dtype=bool)
        for i, ballot in enumerate(self.ballots):
            mat[i, list(ballot)] = True
        return mat

    def __iter__(self):
        return iter(self.ballots)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ApprovalElection):
            return NotImplemented
        return (
            self.num_candidates == other.num_candidates
            and self.ballots == other.ballots
        )

    def __repr__(self) -> str:
        return f"ApprovalElection(m={self.num_candidates}, n={self.num_voters})"


def _leaves(node) -> tuple[int, ...]:
    if isinstance(node, (int, np.integer)):
        return (int(node),)
    out: list[int] = []
    for child in node:
        out.extend(_leaves(child))
    return tuple(out)


def _leaf_depths(node, depth=0) -> list[int]:
    if isinstance(node, (int, np.integer)):
        return [depth]
    out: list[int] = []
    for child in node:
        out.extend(_leaf_depths(child, depth + 1))
    return out


def _internal_has_leaf_child(node) -> bool:
    """True iff every internal node of the subtree has at least one leaf child."""
    if isinstance(node, (int, np.integer)):
        return True
    if not any(isinstance(c, (int, np.integer)) for c in node):
        return False
    return all(_internal_has_leaf_child(c) for c in node)


@dataclass(frozen=True, eq=False)
class GSTree:
    """Rooted ordered tree over candidates; leaves read left-to-right.

    ``root`` is a nested structure: an int is a leaf (candidate index), a
    tuple is an internal node with its children in order.
    """

    kind: str
    root: tuple | int

    def __post_init__(self):
        if self.kind not in ("balanced", "caterpillar"):
            raise ValueError(f"unknown tree kind {self.kind!r}")
        root = _freeze_node(self.root)
        leaves = _leaves(root)
        if sorted(leaves) != list(range(len(leaves))):
            raise ValueError("tree leaves must be exactly the candidates 0..m-1")
        if self.kind == "balanced":
            depths = _leaf_depths(root)
            if max(depths) - min(depths) > 1:
                raise ValueError("balanced tree must have leaf depths within 1")
        else:
            if not _internal_has_leaf_child(root):
                raise ValueError(
                    "caterpillar tree needs a leaf child at every internal node"
                )
        object.__setattr__(self, "root", root)

    @property
    def leaves(self) -> tuple[int, ...]:
        return _leaves(self.root)

    @property
    def num_internal(self) -> int:
        def count(node) -> int:
            if isinstance(node, int):
                return 0
            return 1 + sum(count(c) for c in node)

        return count(self.root)

    def frontier(self, flips: Sequence[bool]) -> tuple[int, ...]:
        """Leaf order after reversing the children of the flagged internal
        nodes; internal nodes are numbered in pre-order."""
        flips = list(flips)
        if len(flips) != self.num_internal:
            raise ValueError(
                f"expected {self.num_internal} flip flags, got {len(flips)}"
            )
        counter = iter(range(len(flips)))

        def read(node) -> list[int]:
            if isinstance(node, int):
                return [node]
            children = list(node)
            if flips[next(counter)]:
                children.reverse()
            out: list[int] = []
            for child in children:
                out.extend(read(child))
            return out

        return tuple(read(self.root))

    @staticmethod
    def caterpillar(leaf_order: Sequence[int]) -> "GSTree":
        leaf_order = list(leaf_order)
        node: tuple | int = leaf_order[-1]
        for leaf in reversed(leaf_order[:-1]):
            node = (leaf, node)
        return GSTree("caterpillar", node)

    @staticmethod
    def balanced(leaf_order: Sequence[int]) -> "GSTree":
        def build(chunk: list[int]):
            if len(chunk) == 1:
                return chunk[0]
            half = (len(chunk) + 1) // 2
            return (build(chunk[:half]), build(chunk[half:]))

        return GSTree("balanced", build(list(leaf_order)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GSTree):
            return NotImplemented
        return self.kind == other.kind and self.root == other.root


def _freeze_node(node):
    if isinstance(node, (int, np.integer)):
        return int(node)
    if isinstance(node, (list, tuple)):
        if len(node) < 2:
            raise ValueError("internal nodes need at least two children")
        return tuple(_freeze_node(c) for c in node)
    raise TypeError(f"tree nodes must be ints or sequences, got {type(node).__name__}")


@dataclass(frozen=True, eq=False)
class StructureWitness:
    """Certificate that an election lies in a structured domain.

    ``order`` is the societal axis for single_peaked / spoc /
    candidate_interval, and the voter ordering for single_crossing /
    voter_interval.  ``tree`` is only used by group_separable.
    """

    variant: str
    order: tuple[int, ...] | None = None
    tree: GSTree | None = None

    def __post_init__(self):
        if self.variant not in WITNESS_VARIANTS:
            raise ValueError(f"unknown witness variant {self.variant!r}")
        if self.variant == "group_separable":
            if self.tree is None:
                raise ValueError("group_separable witness requires a tree")
        else:
            if self.order is None:
                raise ValueError(f"{self.variant} witness requires an order")
            object.__setattr__(self, "order", tuple(int(x) for x in self.order))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureWitness):
            return NotImplemented
        return (
            self.variant == other.variant
            and self.order == other.order
            and self.tree == other.tree
        )


def _ranks_along_axis(e: OrdinalElection, axis: tuple[int, ...]) -> np.ndarray:
    """(n, m) array: entry [v, k] is the rank vote v gives to axis[k]."""
    positions = np.empty_like(e.votes)
    np.put_along_axis(positions, e.votes, np.arange(e.m)[None, :], axis=1)
    return positions[:, list(axis)]


def _is_single_peaked(e: OrdinalElection, axis: tuple[int, ...]) -> bool:
    if e.m <= 2 or e.num_voters == 0:
        return True
    ranks = _ranks_along_axis(e, axis)
    diff = np.diff(ranks, axis=1)
    # valid iff no ascent (worse) is ever followed by a descent (better)
    bad = (diff[:, :-1] > 0) & (diff[:, 1:] < 0)
    return not bad.any()


def _is_spoc(e: OrdinalElection, axis: tuple[int, ...]) -> bool:
    m = e.m
    if m <= 3 or e.num_voters == 0:
        # every order is an arc-prefix order on a cycle of <= 3 candidates
        return True
    pos_on_cycle = {c: k for k, c in enumerate(axis)}
    for row in e.votes:
        lo = hi = pos_on_cycle[row[0]]
        ok = True
        for c in row[1:]:
            p = pos_on_cycle[c]
            if p == (lo - 1) % m:
                lo = p
            elif p == (hi + 1) % m:
                hi = p
            else:
                ok = False
                break
        if not ok:
            return False
    return True


def _is_single_crossing(e: OrdinalElection, voter_order: tuple[int, ...]) -> bool:
    if e.num_voters <= 1:
        return True
    positions = np.empty_like(e.votes)
    np.put_along_axis(positions, e.votes, np.arange(e.m)[None, :], axis=1)
    positions = positions[list(voter_order)]
    # prefers[v, a, b]: voter v ranks a above b
    prefers = positions[:, :, None] < positions[:, None, :]
    crossings = (prefers[1:] != prefers[:-1]).sum(axis=0)
    return not (crossings > 1).any()


def _is_gs_vote(pos: dict[int, int], node) -> bool:
    """Check one vote against the tree: every subtree's leaves occupy a
    contiguous block and sibling blocks appear in original or reversed order."""

    def span(nd) -> tuple[int, int, int]:
        if isinstance(nd, int):
            p = pos[nd]
            return p, p, 1
        spans = [span(c) for c in nd]
        if any(s is None for s in spans):
            return None  # type: ignore[return-value]
        size = sum(s[2] for s in spans)
        lo = min(s[0] for s in spans)
        hi = max(s[1] for s in spans)
        if hi - lo + 1 != size:
            return None  # type: ignore[return-value]
        starts = [s[0] for s in spans]
        if starts != sorted(starts) and starts != sorted(starts, reverse=True):
            return None  # type: ignore[return-value]
        return lo, hi, size

    try:
        return span(node) is not None
    except TypeError:
        return False


def _is_group_separable(e: OrdinalElection, tree: GSTree) -> bool:
    for row in e.votes:
        pos = {int(c): k for k, c in enumerate(row)}
        if not _is_gs_vote(pos, tree.root):
            return False
    return True


def _is_candidate_interval(e: ApprovalElection, axis: tuple[int, ...]) -> bool:
    pos = {c: k for k, c in enumerate(axis)}
    for ballot in e.ballots:
        if not ballot:
            continue
        ps = sorted(pos[c] for c in ballot)
        if ps[-1] - ps[0] + 1 != len(ps):
            return False
    return True


def _is_voter_interval(e: ApprovalElection, voter_order: tuple[int, ...]) -> bool:
    mat = e.membership_matrix()[list(voter_order)]
    for c in range(e.num_candidates):
        idx = np.flatnonzero(mat[:, c])
        if idx.size and idx[-1] - idx[0] + 1 != idx.size:
            return False
    return True


def validate_structure(
    e: OrdinalElection | ApprovalElection, witness: StructureWitness
) -> bool:
    """True iff every vote of ``e`` satisfies the witnessed structure.

    single_crossing checks the given voter ordering only; no search for a
    better ordering is attempted.  Raises on witness/election dimension or
    kind mismatches.
    """
    ordinal = isinstance(e, OrdinalElection)
    variant = witness.variant
    if variant in ("single_peaked", "spoc", "single_crossing", "group_separable"):
        if not ordinal:
            raise ValueError(f"{variant} witness applies to ordinal elections")
    else:
        if ordinal:
            raise ValueError(f"{variant} witness applies to approval elections")

    if variant == "single_peaked":
        axis = _check_permutation(witness.order, e.num_candidates, "axis")
        return _is_single_peaked(e, axis)
    if variant == "spoc":
        axis = _check_permutation(witness.order, e.num_candidates, "cyclic axis")
        return _is_spoc(e, axis)
    if variant == "single_crossing":
        order = _check_permutation(witness.order, e.num_voters, "voter order")
        return _is_single_crossing(e, order)
    if variant == "group_separable":
        if len(witness.tree.leaves) != e.num_candidates:
            raise ValueError("tree size does not match the election")
        return _is_group_separable(e, witness.tree)
    if variant == "candidate_interval":
        axis = _check_permutation(witness.order, e.num_candidates, "axis")
        return _is_candidate_interval(e, axis)
    if variant == "voter_interval":
        order = _check_permutation(witness.order, e.num_voters, "voter order")
        return _is_voter_interval(e, order)
    raise AssertionError(variant)
