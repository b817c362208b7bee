"""Vote-level and election-level distances.

The election distance minimizes the total swap distance over all candidate
relabelings and voter matchings, making it invariant to renaming candidates
and voters.  The exact version enumerates candidate permutations (feasible
for small m); the heuristic is an alternating local search that returns an
upper bound.
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import ApprovalElection, OrdinalElection
from .rng import stream

EXACT_CANDIDATE_LIMIT = 8


def swap_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of candidate pairs ranked oppositely by u and v (Kendall tau
    distance), counted in O(m log m) by merge-sort inversion counting."""
    u, v = list(u), list(v)
    if len(u) != len(v):
        raise ValueError(f"rankings have different lengths: {len(u)} vs {len(v)}")
    pos_v = {c: i for i, c in enumerate(v)}
    if len(pos_v) != len(v):
        raise ValueError("rankings must not repeat candidates")
    try:
        sequence = [pos_v[c] for c in u]
    except KeyError as err:
        raise ValueError(f"candidate {err.args[0]} missing from second ranking")
    return _count_inversions(sequence)


def _count_inversions(seq: list[int]) -> int:
    if len(seq) <= 1:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    inv = _count_inversions(left) + _count_inversions(right)
    merged, i, j = [], 0, 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            inv += len(left) - i
    seq[:] = merged + left[i:] + right[j:]
    return inv


def ballot_distance(
    u: "frozenset[int] | set[int]",
    v: "frozenset[int] | set[int]",
    metric: str = "hamming",
) -> float:
    """Hamming (symmetric difference size) or Jaccard (1 - |∩|/|∪|, zero
    for two empty ballots) distance between approval ballots."""
    u, v = frozenset(u), frozenset(v)
    if metric == "hamming":
        return float(len(u ^ v))
    if metric == "jaccard":
        union = len(u | v)
        return 0.0 if union == 0 else 1.0 - len(u & v) / union
    raise ValueError(f"unknown ballot metric {metric!r}")


def _pair_tensor(votes: np.ndarray, m: int) -> np.ndarray:
    """(n, m, m) boolean tensor: entry [v, a, b] set iff vote v ranks a
    above b.  The diagonal is zero."""
    n = votes.shape[0]
    positions = np.empty_like(votes)
    np.put_along_axis(positions, votes, np.arange(m)[None, :], axis=1)
    return positions[:, :, None] < positions[:, None, :]


def _pairwise_swap_matrix(flat: np.ndarray) -> np.ndarray:
    """All-pairs swap distances from (k, m*m) pair tensors; both (a,b) and
    (b,a) disagree when two votes differ on a pair, hence the halving."""
    f = flat.astype(np.float64)
    disagreements = f @ (1.0 - f.T) + (1.0 - f) @ f.T
    return np.rint(disagreements / 2.0).astype(np.int64)


def vote_distance_matrix(
    e: OrdinalElection, deduplicate: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise swap distances between the election's votes.

    With ``deduplicate`` the matrix covers distinct votes only (sorted
    lexicographically) and the multiplicity vector counts how many voters
    cast each; otherwise multiplicities are all one.
    """
    if e.num_voters == 0:
        return np.zeros((0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64)
    if deduplicate:
        votes, mult = np.unique(e.votes, axis=0, return_counts=True)
    else:
        votes, mult = e.votes, np.ones(e.num_voters, dtype=np.int64)
    flat = _pair_tensor(votes, e.m).reshape(votes.shape[0], -1)
    return _pairwise_swap_matrix(flat), mult


def _check_same_shape(e1: OrdinalElection, e2: OrdinalElection) -> None:
    if e1.num_candidates != e2.num_candidates or e1.num_voters != e2.num_voters:
        raise ValueError(
            "elections must have equal numbers of candidates and voters, got "
            f"({e1.num_candidates},{e1.num_voters}) vs "
            f"({e2.num_candidates},{e2.num_voters})"
        )


def _relabeled_cost_matrix(
    flat1: np.ndarray, comp2t: np.ndarray, f2t: np.ndarray, n: int, m: int, sigma
) -> np.ndarray:
    """n x n swap-distance matrix between e1 with candidates relabeled by
    sigma and e2.  flat1 is e1's (n, m, m) tensor; comp2t/f2t are the
    transposed complements of e2's flattened tensor."""
    inv = np.argsort(sigma)
    shuffled = flat1[:, inv][:, :, inv].reshape(n, m * m).astype(np.float64)
    return (shuffled @ comp2t + (1.0 - shuffled) @ f2t) / 2.0


def election_distance_exact(
    e1: OrdinalElection,
    e2: OrdinalElection,
    allow_large: bool = False,
) -> int:
    """Exact isomorphic swap distance: minimum over all m! candidate
    relabelings of the optimal voter matching cost.

    Refuses m > 8 unless ``allow_large`` (the enumeration explodes).
    """
    _check_same_shape(e1, e2)
    m, n = e1.num_candidates, e1.num_voters
    if m > EXACT_CANDIDATE_LIMIT and not allow_large:
        raise ValueError(
            f"exact distance over {m}! relabelings is too expensive; "
            f"pass allow_large=True to force it or use the heuristic"
        )
    if n == 0:
        return 0
    flat1 = _pair_tensor(e1.votes, m)
    f2 = _pair_tensor(e2.votes, m).reshape(n, m * m).astype(np.float64)
    f2t, comp2t = f2.T.copy(), (1.0 - f2).T.copy()
    best = np.inf
    for sigma in permutations(range(m)):
        cost = _relabeled_cost_matrix(flat1, comp2t, f2t, n, m, np.array(sigma))
        rows, cols = linear_sum_assignment(cost)
        best = min(best, cost[rows, cols].sum())
    return int(round(best))


def _matching_cost_table(a_flat: np.ndarray, b_flat: np.ndarray) -> np.ndarray:
    """(m*m, m*m) table G with G[p, q] = number of matched voter pairs whose
    tensors disagree between e1 column p and e2 column q; rows of b_flat
    must already be aligned to a_flat by the current matching."""
    a = a_flat.astype(np.float64)
    b = b_flat.astype(np.float64)
    return a.T @ (1.0 - b) + (1.0 - a.T) @ b


def _sigma_cost(G: np.ndarray, sigma: np.ndarray, pair_rows: np.ndarray, m: int):
    cols = (sigma[:, None] * m + sigma[None, :]).ravel()
    return G[pair_rows, cols].sum() / 2.0


def election_distance_heuristic(
    e1: OrdinalElection,
    e2: OrdinalElection,
    restarts: int = 20,
    seed: int = 0,
) -> int:
    """Upper bound on the isomorphic swap distance via alternating local
    search: optimal voter matching for the current candidate relabeling,
    then transposition descent on the relabeling, repeated from multiple
    starts.  Never below the exact distance; deterministic in (seed,
    restarts)."""
    _check_same_shape(e1, e2)
    m, n = e1.num_candidates, e1.num_voters
    if n == 0:
        return 0
    if restarts < 1:
        raise ValueError("restarts must be >= 1")

    flat1_t = _pair_tensor(e1.votes, m)
    flat1 = flat1_t.reshape(n, m * m)
    f2 = _pair_tensor(e2.votes, m).reshape(n, m * m).astype(np.float64)
    f2t, comp2t = f2.T.copy(), (1.0 - f2).T.copy()
    pair_rows = np.arange(m * m)
    transpositions = [(i, j) for i in range(m) for j in range(i + 1, m)]

    # warm start: match candidates by mean position profile
    mean1 = np.argsort(e1.votes.argsort(axis=1).mean(axis=0), kind="stable")
    mean2 = np.argsort(e2.votes.argsort(axis=1).mean(axis=0), kind="stable")
    greedy = np.empty(m, dtype=np.int64)
    greedy[mean1] = mean2

    best = np.inf
    for r in range(restarts):
        sigma = greedy.copy() if r == 0 else stream(seed, r).permutation(m)
        cost = None
        while True:
            D = _relabeled_cost_matrix(flat1_t, comp2t, f2t, n, m, sigma)
            rows, cols = linear_sum_assignment(D)
            cost = D[rows, cols].sum()
            G = _matching_cost_table(flat1, f2[cols])
            moved = False
            # descent under the fixed matching, then re-match
            improved = True
            while improved:
                improved = False
                current = _sigma_cost(G, sigma, pair_rows, m)
                for i, j in transpositions:
                    sigma[i], sigma[j] = sigma[j], sigma[i]
                    trial = _sigma_cost(G, sigma, pair_rows, m)
                    if trial < current - 1e-9:
                        current = trial
                        improved = moved = True
                    else:
                        sigma[i], sigma[j] = sigma[j], sigma[i]
            if moved:
                continue
            # polish: evaluate neighbors with a full re-matching
            polished = False
            for i, j in transpositions:
                sigma[i], sigma[j] = sigma[j], sigma[i]
                D = _relabeled_cost_matrix(flat1_t, comp2t, f2t, n, m, sigma)
                rr, cc = linear_sum_assignment(D)
                trial = D[rr, cc].sum()
                if trial < cost - 1e-9:
                    cost = trial
                    polished = True
                    break
                sigma[i], sigma[j] = sigma[j], sigma[i]
            if not polished:
                break
        best = min(best, cost)
    return int(round(best))


def approval_distance_matrix(
    e: ApprovalElection, metric: str = "hamming"
) -> np.ndarray:
    """Pairwise ballot distances within one approval election."""
    mat = e.membership_matrix().astype(np.float64)
    inter = mat @ mat.T
    sizes = mat.sum(axis=1)
    if metric == "hamming":
        return sizes[:, None] + sizes[None, :] - 2.0 * inter
    if metric == "jaccard":
        union = sizes[:, None] + sizes[None, :] - inter
        out = np.where(union > 0, 1.0 - inter / np.where(union > 0, union, 1.0), 0.0)
        np.fill_diagonal(out, 0.0)
        return out
    raise ValueError(f"unknown ballot metric {metric!r}")
