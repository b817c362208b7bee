"""Sampling models for approval elections.

Empty ballots are legal outputs (the radius rule produces them); nothing
downstream may assume nonempty ballots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, ndtri

from .core import ApprovalElection, OrdinalElection, StructureWitness
from .ordinal import SpaceSpec, _check_sizes, _points
from .rng import stream, vote_table


# ---------------------------------------------------------------------------
# parameter specs


@dataclass(frozen=True)
class ResamplingSpec:
    """Central ballot of floor(p*m) candidates; each entry is resampled
    (re-approved with probability p) with probability phi."""

    p: float
    phi: float

    def __post_init__(self):
        for name, value in (("p", self.p), ("phi", self.phi)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class NoiseSpec:
    """Vote probability proportional to phi^d(u, v) around a central ballot
    u of floor(p*m) candidates; d is hamming or jaccard."""

    p: float
    phi: float
    metric: str = "hamming"

    def __post_init__(self):
        for name, value in (("p", self.p), ("phi", self.phi)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.metric not in ("hamming", "jaccard"):
            raise ValueError(f"unknown noise metric {self.metric!r}")


@dataclass(frozen=True)
class BallotRule:
    """How a Euclidean voter decides its ballot.

    top_* rules approve the x nearest candidates, radius_* rules approve
    all candidates within r, candidate_top approves each candidate by its
    x nearest voters.
    """

    variant: str
    x: int | None = None
    x_range: tuple[int, int] | None = None
    x_normal: tuple[float, float] | None = None
    r: float | None = None
    r_range: tuple[float, float] | None = None
    r_multiple: float | None = None

    @staticmethod
    def top(x: int) -> "BallotRule":
        if x < 1:
            raise ValueError(f"ballot length must be >= 1, got {x}")
        return BallotRule("top_x", x=int(x))

    @staticmethod
    def top_uniform(lo: int, hi: int) -> "BallotRule":
        if not 1 <= lo <= hi:
            raise ValueError(f"bad ballot-length range [{lo}, {hi}]")
        return BallotRule("top_x", x_range=(int(lo), int(hi)))

    @staticmethod
    def top_normal(mu: float, sigma: float) -> "BallotRule":
        if sigma < 0:
            raise ValueError("sigma must be nonnegative")
        return BallotRule("top_x", x_normal=(float(mu), float(sigma)))

    @staticmethod
    def radius(r: float) -> "BallotRule":
        if r <= 0:
            raise ValueError(f"radius must be positive, got {r}")
        return BallotRule("radius", r=float(r))

    @staticmethod
    def radius_uniform(lo: float, hi: float) -> "BallotRule":
        if not 0 < lo <= hi:
            raise ValueError(f"bad radius range [{lo}, {hi}]")
        return BallotRule("radius", r_range=(float(lo), float(hi)))

    @staticmethod
    def radius_nearest_multiple(k: float) -> "BallotRule":
        if k <= 0:
            raise ValueError(f"multiplier must be positive, got {k}")
        return BallotRule("radius", r_multiple=float(k))

    @staticmethod
    def candidate_top(x: int) -> "BallotRule":
        if x < 1:
            raise ValueError(f"voter count must be >= 1, got {x}")
        return BallotRule("candidate_top", x=int(x))

    def resolve_lengths(
        self, m: int, uniforms: np.ndarray, clip: bool = False
    ) -> np.ndarray:
        """Per-voter ballot lengths for top_x rules.  Randomized draws are
        clipped to [0, m]; fixed lengths above m raise unless ``clip``."""
        if self.variant != "top_x":
            raise ValueError(f"{self.variant} rule has no ballot length")
        n = uniforms.shape[0]
        if self.x is not None:
            if self.x > m and not clip:
                raise ValueError(f"ballot length {self.x} exceeds m={m}")
            return np.full(n, min(self.x, m), dtype=np.int64)
        if self.x_range is not None:
            lo, hi = self.x_range
            if hi > m and not clip:
                raise ValueError(f"ballot length {hi} exceeds m={m}")
            draws = lo + np.minimum(
                (uniforms * (hi - lo + 1)).astype(np.int64), hi - lo
            )
            return np.minimum(draws, m)
        mu, sigma = self.x_normal
        draws = np.rint(mu + sigma * ndtri(np.clip(uniforms, 1e-12, 1 - 1e-12)))
        return np.clip(draws, 0, m).astype(np.int64)


# common radius guidance: much lower radii in 1D than in 2D
EUCLIDEAN_RADIUS_PRESETS = {1: 0.05, 2: 0.2}

# recommended resampling ranges for realistic (PB-like) elections
RESAMPLING_RECOMMENDED_P = (0.0, 0.25)
RESAMPLING_RECOMMENDED_PHI = (0.5, 1.0)


@dataclass(frozen=True)
class PartyListSpec:
    """Every two ballots equal or disjoint.

    uniform_groups splits voters into groups of group_size voters, each
    approving a disjoint block of party_candidates candidates.  urn_parties
    partitions candidates into ``parties`` equal blocks and draws each
    voter's party from a self-reinforcing urn with contagion alpha.
    """

    variant: str = "urn_parties"
    group_size: tuple[int, int] = (5, 20)
    party_candidates: tuple[int, int] = (10, 30)
    parties: int = 2
    alpha: float = 0.5  # the cited experiments do not report alpha

    def __post_init__(self):
        if self.variant not in ("uniform_groups", "urn_parties"):
            raise ValueError(f"unknown party-list variant {self.variant!r}")
        if self.variant == "uniform_groups":
            glo, ghi = self.group_size
            plo, phi = self.party_candidates
            if not 1 <= glo <= ghi or not 1 <= plo <= phi:
                raise ValueError("group and party size ranges must be nonempty")
        else:
            if self.parties < 1:
                raise ValueError("need at least one party")
            if self.alpha < 0:
                raise ValueError("alpha must be nonnegative")


# ---------------------------------------------------------------------------
# cultures


def sample_p_ic(
    m: int, n: int, p: float, seed: int, per_voter: bool = False
) -> ApprovalElection:
    """p-impartial culture: every (voter, candidate) approval is an
    independent Bernoulli(p).

    With ``per_voter`` each voter gets its own approval probability drawn
    uniformly from [0, 1] and ``p`` is ignored (a variant some experiments
    use; the sources describing it are ambiguous, so it is opt-in).
    """
    _check_sizes(m, n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    table = vote_table(seed, 1, n, m)
    if per_voter:
        probs = vote_table(seed, 2, n, 1)
        approvals = table < probs
    else:
        approvals = table < p
    return _from_matrix(m, approvals)


def _from_matrix(m: int, approvals: np.ndarray) -> ApprovalElection:
    return ApprovalElection(
        m, tuple(frozenset(np.flatnonzero(row).tolist()) for row in approvals)
    )


def _central_ballot(m: int, p: float, seed: int) -> frozenset[int]:
    size = math.floor(p * m + 1e-9)
    members = stream(seed, 0).choice(m, size=size, replace=False)
    return frozenset(int(c) for c in members)


def sample_resampling(
    m: int,
    n: int,
    spec: ResamplingSpec,
    seed: int,
    central: "frozenset[int] | None" = None,
) -> ApprovalElection:
    """Resampling model: start from the central ballot and, independently
    per candidate, keep its approval with probability 1-phi or resample it
    (approve with probability p).  The mean ballot size stays floor(p*m)
    for every phi."""
    _check_sizes(m, n)
    if central is None:
        central = _central_ballot(m, spec.p, seed)
    base = np.zeros(m, dtype=bool)
    base[list(central)] = True
    table = vote_table(seed, 1, n, 2 * m)
    resampled = table[:, :m] < spec.phi
    approve_new = table[:, m:] < spec.p
    approvals = np.where(resampled, approve_new, base[None, :])
    return _from_matrix(m, approvals)


def sample_noise(
    m: int,
    n: int,
    spec: NoiseSpec,
    seed: int,
    central: "frozenset[int] | None" = None,
) -> ApprovalElection:
    """Noise model: P(ballot) proportional to phi^d(central, ballot).

    Hamming noise factorizes into independent per-candidate flips with
    probability phi/(1+phi).  Jaccard noise is sampled exactly from the
    O(m^2) table over (kept, added) counts, then the kept and added sets
    are chosen uniformly.
    """
    _check_sizes(m, n)
    if central is None:
        central = _central_ballot(m, spec.p, seed)
    base = np.zeros(m, dtype=bool)
    base[list(central)] = True

    if spec.metric == "hamming":
        flip_prob = spec.phi / (1.0 + spec.phi)
        flips = vote_table(seed, 1, n, m) < flip_prob
        return _from_matrix(m, base[None, :] ^ flips)

    s = len(central)
    a_grid = np.arange(s + 1, dtype=np.float64)  # kept from the central ballot
    b_grid = np.arange(m - s + 1, dtype=np.float64)  # added from outside
    denom = s + b_grid[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        jaccard = np.where(denom > 0, 1.0 - a_grid[:, None] / denom, 0.0)
    log_binom = (
        _log_choose(s, a_grid)[:, None] + _log_choose(m - s, b_grid)[None, :]
    )
    if spec.phi == 0.0:
        weights = np.where(jaccard == 0.0, np.exp(log_binom), 0.0)
    else:
        weights = np.exp(log_binom + jaccard * math.log(spec.phi))
    cdf = np.cumsum(weights.ravel())
    cdf /= cdf[-1]

    table = vote_table(seed, 1, n, m + 1)
    inside = sorted(central)
    outside = sorted(set(range(m)) - central)
    ballots = []
    width = m - s + 1
    for i in range(n):
        cell = int(np.searchsorted(cdf, table[i, 0], side="right"))
        a, b = divmod(cell, width)
        kept = _uniform_subset(inside, a, table[i, 1 : 1 + s])
        added = _uniform_subset(outside, b, table[i, 1 + s : 1 + m])
        ballots.append(frozenset(kept + added))
    return ApprovalElection(m, tuple(ballots))


def _log_choose(n: int, k: np.ndarray) -> np.ndarray:
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _uniform_subset(pool: list[int], size: int, keys: np.ndarray) -> list[int]:
    """Uniformly random size-subset of pool: take the first ``size`` items
    of the permutation induced by the uniform keys."""
    if size == 0:
        return []
    order = np.argsort(keys[: len(pool)])
    return [pool[j] for j in order[:size]]


def sample_euclidean_approval(
    m: int, n: int, space: SpaceSpec, rule: BallotRule, seed: int
) -> "tuple[ApprovalElection, np.ndarray, np.ndarray]":
    """Euclidean approval: points as in the ordinal Euclidean model, with
    the ballot decided by the given rule.  Ballots under voter rules are
    distance-downward-closed: approving c implies approving every candidate
    nearer than c.  Returns (election, voter points, candidate points)."""
    _check_sizes(m, n)
    cand_shape, voter_shape = space.shapes
    cands = _points(stream(seed, 0), m, space.dimension, cand_shape)
    voters = _points(stream(seed, 1), n, space.dimension, voter_shape)
    diff = voters[:, None, :] - cands[None, :, :]
    dists = np.sqrt((diff * diff).sum(axis=2))

    if rule.variant == "top_x":
        lengths = rule.resolve_lengths(m, vote_table(seed, 2, n, 1)[:, 0])
        nearest = np.argsort(dists, axis=1, kind="stable")
        ballots = tuple(
            frozenset(int(c) for c in nearest[i, : lengths[i]]) for i in range(n)
        )
        return ApprovalElection(m, ballots), voters, cands
    if rule.variant == "radius":
        if rule.r is not None:
            radii = np.full(n, rule.r)
        elif rule.r_range is not None:
            lo, hi = rule.r_range
            radii = lo + (hi - lo) * vote_table(seed, 2, n, 1)[:, 0]
        else:
            radii = rule.r_multiple * dists.min(axis=1)
        return _from_matrix(m, dists <= radii[:, None]), voters, cands
    if rule.variant == "candidate_top":
        if rule.x > n:
            raise ValueError(f"candidate_top needs x <= n, got x={rule.x}, n={n}")
        nearest_voters = np.argsort(dists.T, axis=1, kind="stable")[:, : rule.x]
        approvals = np.zeros((n, m), dtype=bool)
        for c in range(m):
            approvals[nearest_voters[c], c] = True
        return _from_matrix(m, approvals), voters, cands
    raise ValueError(f"unknown ballot rule {rule.variant!r}")


def sample_interval(
    m: int, n: int, kind: str, seed: int
) -> tuple[ApprovalElection, StructureWitness]:
    """Candidate-interval (CI) and voter-interval (VI) elections from 1D
    points.

    CI: each voter approves the candidates within its own radius, so every
    ballot is an interval of the candidate axis.  VI: each candidate is
    approved by the voters within the candidate's radius, so approvers form
    an interval of the voter order.  Radii are uniform in (0, 1].
    """
    _check_sizes(m, n)
    cands = stream(seed, 0).random(m)
    voters = vote_table(seed, 1, n, 2)
    voter_pos = voters[:, 0]
    gaps = np.abs(voter_pos[:, None] - cands[None, :])
    if kind.upper() == "CI":
        radii = 1.0 - voters[:, 1]  # (0, 1]
        approvals = gaps <= radii[:, None]
        axis = np.argsort(cands, kind="stable")
        witness = StructureWitness(
            "candidate_interval", order=tuple(int(c) for c in axis)
        )
    elif kind.upper() == "VI":
        radii = 1.0 - stream(seed, 2).random(m)
        approvals = gaps <= radii[None, :]
        order = np.argsort(voter_pos, kind="stable")
        witness = StructureWitness("voter_interval", order=tuple(int(v) for v in order))
    else:
        raise ValueError(f"interval kind must be CI or VI, got {kind!r}")
    return _from_matrix(m, approvals), witness


def sample_party_list(
    m: int, n: int, spec: PartyListSpec, seed: int
) -> ApprovalElection:
    """Party-list elections: every two ballots are equal or disjoint."""
    _check_sizes(m, n)
    rng = stream(seed, 0)
    shuffled = rng.permutation(m)

    if spec.variant == "uniform_groups":
        glo, ghi = spec.group_size
        plo, phi = spec.party_candidates
        ballots: list[frozenset[int]] = []
        used = 0
        while len(ballots) < n:
            size = int(rng.integers(glo, ghi + 1))
            take = int(rng.integers(plo, phi + 1))
            if used + take > m:
                raise ValueError(
                    f"not enough candidates for disjoint parties: needed "
                    f"{used + take} of {m}"
                )
            party = frozenset(int(c) for c in shuffled[used : used + take])
            used += take
            ballots.extend([party] * min(size, n - len(ballots)))
        return ApprovalElection(m, tuple(ballots))

    g = spec.parties
    if g > m:
        raise ValueError(f"cannot split {m} candidates into {g} parties")
    size = m // g  # the m - g*size leftover candidates are never approved
    parties = [
        frozenset(int(c) for c in shuffled[k * size : (k + 1) * size])
        for k in range(g)
    ]
    draws = np.empty(n, dtype=np.int64)
    for t in range(n):
        if t == 0 or rng.random() < 1.0 / (1.0 + spec.alpha * t):
            draws[t] = rng.integers(g)
        else:
            draws[t] = draws[rng.integers(t)]
    return ApprovalElection(m, tuple(parties[k] for k in draws))


def truncate_to_approval(
    e: OrdinalElection, rule: BallotRule, seed: int = 0
) -> ApprovalElection:
    """Approval ballots from an ordinal election: voter i approves the top
    x_i candidates of its ranking (top_x rules only; lengths clipped to
    [0, m])."""
    if rule.variant != "top_x":
        raise ValueError("truncation requires a top_x ballot rule")
    m = e.num_candidates
    lengths = rule.resolve_lengths(
        m, vote_table(seed, 2, e.num_voters, 1)[:, 0], clip=True
    )
    ballots = tuple(
        frozenset(int(c) for c in e.votes[i, : lengths[i]])
        for i in range(e.num_voters)
    )
    return ApprovalElection(m, ballots)
