"""Sampling models (statistical cultures) for ordinal elections.

Every sampler is deterministic in (parameters, seed) and, where the model
is i.i.d. across voters, vote i consumes only row i of its uniform table,
so generation order never affects the output.  Structured samplers return
the witness (axis, voter order or tree) that certifies their output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .core import GSTree, OrdinalElection, StructureWitness, _check_permutation
from .rng import stream, vote_table

REFERENCE_KINDS = ("ID", "AN", "UN")


# ---------------------------------------------------------------------------
# parameter specs


@dataclass(frozen=True)
class MallowsSpec:
    """Dispersion given either as raw phi or as norm_phi (rescaled so the
    expected swap distance is norm_phi * m(m-1)/4, comparable across m)."""

    phi: float | None = None
    norm_phi: float | None = None
    central: tuple[int, ...] | None = None  # None = identity order

    def __post_init__(self):
        if (self.phi is None) == (self.norm_phi is None):
            raise ValueError("give exactly one of phi and norm_phi")
        value = self.phi if self.phi is not None else self.norm_phi
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"dispersion must lie in [0, 1], got {value}")
        if self.central is not None:
            object.__setattr__(self, "central", tuple(int(c) for c in self.central))

    def resolve(self, m: int) -> tuple[np.ndarray, float]:
        central = (
            np.arange(m, dtype=np.int64)
            if self.central is None
            else np.array(_check_permutation(self.central, m, "central order"))
        )
        phi = self.phi if self.phi is not None else phi_from_norm_phi(m, self.norm_phi)
        return central, float(phi)


@dataclass(frozen=True)
class MallowsMixtureSpec:
    """Weighted mixture of Mallows components; a component is drawn per vote."""

    components: tuple[tuple[float, MallowsSpec], ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("mixture needs at least one component")
        weights = [w for w, _ in self.components]
        if any(w < 0 for w in weights):
            raise ValueError("mixture weights must be nonnegative")
        total = sum(weights)
        if not math.isclose(total, 1.0, rel_tol=0, abs_tol=1e-9):
            raise ValueError(f"mixture weights must sum to 1, got {total}")


def balanced_two_mallows(
    m: int, phi: float | None = None, norm_phi: float | None = None
) -> MallowsMixtureSpec:
    """Equal split between two Mallows components with the same dispersion
    and opposite central orders."""
    forward = tuple(range(m))
    return MallowsMixtureSpec(
        (
            (0.5, MallowsSpec(phi=phi, norm_phi=norm_phi, central=forward)),
            (0.5, MallowsSpec(phi=phi, norm_phi=norm_phi, central=forward[::-1])),
        )
    )


@dataclass(frozen=True)
class UrnSpec:
    """Contagion alpha, either fixed or drawn per election from a Gamma
    distribution (shape, scale)."""

    alpha: float | None = None
    alpha_gamma: tuple[float, float] | None = None

    def __post_init__(self):
        if (self.alpha is None) == (self.alpha_gamma is None):
            raise ValueError("give exactly one of alpha and alpha_gamma")
        if self.alpha is not None and self.alpha < 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if self.alpha_gamma is not None:
            shape, scale = self.alpha_gamma
            if shape <= 0 or scale <= 0:
                raise ValueError("gamma shape and scale must be positive")


# per the urn literature around the map of elections
URN_GAMMA_PRESET = UrnSpec(alpha_gamma=(0.8, 1.0))


@dataclass(frozen=True)
class SpaceSpec:
    """d-dimensional space for Euclidean models; shapes are the unit cube
    [0,1]^d, the unit sphere surface, or a standard gaussian.  Voter and
    candidate distributions may differ."""

    dimension: int = 2
    shape: str = "cube"
    candidate_shape: str | None = None
    voter_shape: str | None = None

    _SHAPES = ("cube", "sphere", "gaussian")

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        for s in (self.shape, self.candidate_shape, self.voter_shape):
            if s is not None and s not in self._SHAPES:
                raise ValueError(f"unknown space shape {s!r}")

    @property
    def shapes(self) -> tuple[str, str]:
        return (self.candidate_shape or self.shape, self.voter_shape or self.shape)


@dataclass(frozen=True)
class EuclideanSample:
    """Election together with the points that induced it."""

    election: OrdinalElection
    voter_points: np.ndarray
    candidate_points: np.ndarray

    def __iter__(self):  # allow tuple-unpacking
        return iter((self.election, self.voter_points, self.candidate_points))


# ---------------------------------------------------------------------------
# basic cultures


def _check_sizes(m: int, n: int) -> None:
    if m < 1:
        raise ValueError(f"need at least one candidate, got m={m}")
    if n < 0:
        raise ValueError(f"number of voters must be >= 0, got n={n}")


def sample_impartial(m: int, n: int, seed: int) -> OrdinalElection:
    """Impartial culture: each vote drawn uniformly over all m! orders."""
    _check_sizes(m, n)
    keys = vote_table(seed, 1, n, m)
    votes = np.argsort(keys, axis=1)
    return OrdinalElection(m, votes)


def sample_urn(
    m: int, n: int, spec: "UrnSpec | float", seed: int
) -> OrdinalElection:
    """Polya-Eggenberger urn: the urn starts with one copy of each order and
    each draw returns alpha * m! extra copies of the drawn order.

    Equivalently (and without ever materializing m! weights): draw t copies
    a fresh uniform order with probability 1/(1 + alpha*t), otherwise repeat
    a uniformly chosen earlier draw.  alpha=0 is impartial culture and
    alpha=1/m! is the impartial anonymous culture.
    """
    _check_sizes(m, n)
    if not isinstance(spec, UrnSpec):
        spec = UrnSpec(alpha=float(spec))
    rng = stream(seed, 1)
    if spec.alpha_gamma is not None:
        shape, scale = spec.alpha_gamma
        alpha = float(stream(seed, 0).gamma(shape, scale))
    else:
        alpha = spec.alpha
    votes = np.empty((n, m), dtype=np.int64)
    for t in range(n):
        if t == 0 or rng.random() < 1.0 / (1.0 + alpha * t):
            votes[t] = rng.permutation(m)
        else:
            votes[t] = votes[rng.integers(t)]
    return OrdinalElection(m, votes)


def iac_spec(m: int) -> UrnSpec:
    """Urn parameters realizing the impartial anonymous culture."""
    return UrnSpec(alpha=1.0 / math.factorial(m))


# ---------------------------------------------------------------------------
# Mallows


def expected_swap_distance(m: int, phi: float) -> float:
    """Closed-form expected swap distance between a Mallows sample and its
    central order.

    Uses the insertion decomposition: the candidate inserted at step j adds
    k inversions with probability proportional to phi^k (k = 0..j), so the
    expectation is a sum of well-conditioned ratios, stable up to phi = 1.
    """
    if m < 2 or phi == 0.0:
        return 0.0
    ks = np.arange(m, dtype=np.float64)
    pows = phi**ks
    s0 = np.cumsum(pows)
    s1 = np.cumsum(ks * pows)
    return float(np.sum(s1[1:] / s0[1:]))


def phi_from_norm_phi(m: int, norm_phi: float) -> float:
    """Dispersion phi whose expected swap distance equals
    norm_phi * m(m-1)/4, found by bisection (to within 1e-10)."""
    if not 0.0 <= norm_phi <= 1.0:
        raise ValueError(f"norm_phi must lie in [0, 1], got {norm_phi}")
    if m < 2 or norm_phi == 0.0:
        return 0.0
    if norm_phi == 1.0:
        return 1.0
    target = norm_phi * m * (m - 1) / 4.0
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if expected_swap_distance(m, mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return (lo + hi) / 2.0


def _insertion_cdfs(m: int, phi: float) -> list[np.ndarray]:
    """cdfs[j] is the cdf over k = 0..j of P(k) ∝ phi^k (inversions added
    when inserting the (j+1)-th candidate)."""
    cdfs = []
    for j in range(1, m):
        w = phi ** np.arange(j + 1, dtype=np.float64)
        c = np.cumsum(w)
        cdfs.append(c / c[-1])
    return cdfs


def _rim_votes(
    central: np.ndarray, phi: float, uniforms: np.ndarray
) -> np.ndarray:
    """Repeated-insertion sampling; uniforms has one row per vote and m-1
    columns.  Exact for every phi in [0, 1]."""
    n = uniforms.shape[0]
    m = central.shape[0]
    votes = np.empty((n, m), dtype=np.int64)
    if m == 1:
        votes[:] = central
        return votes
    cdfs = _insertion_cdfs(m, phi)
    for i in range(n):
        vote = [int(central[0])]
        row = uniforms[i]
        for j in range(1, m):
            k = int(np.searchsorted(cdfs[j - 1], row[j - 1], side="right"))
            # k candidates ranked above the new one end up below it
            vote.insert(j - k, int(central[j]))
        votes[i] = vote
    return votes


def sample_mallows(
    m: int, n: int, spec: "MallowsSpec | MallowsMixtureSpec | float", seed: int
) -> OrdinalElection:
    """Mallows model: P(vote) proportional to phi^(swap distance to the
    central order), sampled by repeated insertion; mixtures draw a
    component per vote by weight."""
    _check_sizes(m, n)
    if isinstance(spec, (int, float)):
        spec = MallowsSpec(phi=float(spec))
    if isinstance(spec, MallowsSpec):
        central, phi = spec.resolve(m)
        uniforms = vote_table(seed, 1, n, max(m - 1, 1))
        return OrdinalElection(m, _rim_votes(central, phi, uniforms[:, : m - 1]))
    if not isinstance(spec, MallowsMixtureSpec):
        raise TypeError(f"bad Mallows spec: {type(spec).__name__}")
    resolved = [s.resolve(m) for _, s in spec.components]
    cum_weights = np.cumsum([w for w, _ in spec.components])
    table = vote_table(seed, 1, n, m)
    which = np.searchsorted(cum_weights, table[:, 0], side="right")
    which = np.minimum(which, len(resolved) - 1)
    votes = np.empty((n, m), dtype=np.int64)
    for c, (central, phi) in enumerate(resolved):
        rows = np.flatnonzero(which == c)
        if rows.size:
            votes[rows] = _rim_votes(central, phi, table[rows, 1:m])
    return OrdinalElection(m, votes)


# ---------------------------------------------------------------------------
# Euclidean


def _points(rng: np.random.Generator, k: int, d: int, shape: str) -> np.ndarray:
    if shape == "cube":
        return rng.random((k, d))
    if shape == "gaussian":
        return rng.standard_normal((k, d))
    if shape == "sphere":
        x = rng.standard_normal((k, d))
        norms = np.linalg.norm(x, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        return x / norms
    raise ValueError(f"unknown space shape {shape!r}")


def sample_euclidean(
    m: int, n: int, space: SpaceSpec, seed: int
) -> EuclideanSample:
    """Euclidean model: candidates and voters are random points; each voter
    ranks candidates by increasing distance, ties broken by candidate
    index."""
    _check_sizes(m, n)
    cand_shape, voter_shape = space.shapes
    cands = _points(stream(seed, 0), m, space.dimension, cand_shape)
    voters = _points(stream(seed, 1), n, space.dimension, voter_shape)
    diff = voters[:, None, :] - cands[None, :, :]
    dists = np.sqrt((diff * diff).sum(axis=2))
    votes = np.argsort(dists, axis=1, kind="stable")
    return EuclideanSample(OrdinalElection(m, votes), voters, cands)


# ---------------------------------------------------------------------------
# structured domains


def sample_walsh_single_peaked(
    m: int, n: int, seed: int
) -> tuple[OrdinalElection, StructureWitness]:
    """Uniform distribution over the 2^(m-1) votes single-peaked on a
    uniformly drawn axis.

    Votes are built worst-to-best: the set of not-yet-ranked candidates is
    always a contiguous axis interval, and a fair coin picks which endpoint
    is ranked next — every choice sequence yields a distinct single-peaked
    vote, so the outcome is exactly uniform.
    """
    _check_sizes(m, n)
    axis = stream(seed, 0).permutation(m)
    coins = vote_table(seed, 1, n, max(m - 1, 1)) < 0.5
    votes = np.empty((n, m), dtype=np.int64)
    for i in range(n):
        lo, hi = 0, m - 1
        worst_first = []
        for step in range(m - 1):
            if coins[i, step]:
                worst_first.append(axis[lo])
                lo += 1
            else:
                worst_first.append(axis[hi])
                hi -= 1
        worst_first.append(axis[lo])
        votes[i] = worst_first[::-1]
    return (
        OrdinalElection(m, votes),
        StructureWitness("single_peaked", order=tuple(int(c) for c in axis)),
    )


def sample_conitzer_single_peaked(
    m: int, n: int, seed: int
) -> tuple[OrdinalElection, StructureWitness]:
    """Single-peaked votes grown around a uniformly chosen top candidate:
    repeatedly extend left or right on the axis with a fair coin until one
    side runs out.  Non-uniform over the single-peaked domain but close to
    1D-Euclidean behavior."""
    _check_sizes(m, n)
    axis = stream(seed, 0).permutation(m)
    table = vote_table(seed, 1, n, m)
    votes = np.empty((n, m), dtype=np.int64)
    for i in range(n):
        top = min(int(table[i, 0] * m), m - 1)
        lo = hi = top
        vote = [axis[top]]
        for step in range(m - 1):
            go_left = lo > 0 and (hi == m - 1 or table[i, 1 + step] < 0.5)
            if go_left:
                lo -= 1
                vote.append(axis[lo])
            else:
                hi += 1
                vote.append(axis[hi])
        votes[i] = vote
    return (
        OrdinalElection(m, votes),
        StructureWitness("single_peaked", order=tuple(int(c) for c in axis)),
    )


def sample_spoc(
    m: int, n: int, seed: int
) -> tuple[OrdinalElection, StructureWitness]:
    """Single-peaked on a circle: the top candidate is uniform and the vote
    extends clockwise/counterclockwise by fair coins; this yields the
    uniform distribution over the m * 2^(m-2) votes single-peaked on the
    cyclic axis."""
    _check_sizes(m, n)
    axis = stream(seed, 0).permutation(m)
    table = vote_table(seed, 1, n, m)
    votes = np.empty((n, m), dtype=np.int64)
    for i in range(n):
        top = min(int(table[i, 0] * m), m - 1)
        lo = hi = top
        vote = [axis[top]]
        for step in range(m - 1):
            if table[i, 1 + step] < 0.5:
                lo = (lo - 1) % m
                vote.append(axis[lo])
            else:
                hi = (hi + 1) % m
                vote.append(axis[hi])
        votes[i] = vote
    return (
        OrdinalElection(m, votes),
        StructureWitness("spoc", order=tuple(int(c) for c in axis)),
    )


def sample_single_crossing(
    m: int, n: int, seed: int
) -> tuple[OrdinalElection, StructureWitness]:
    """Single-crossing heuristic: walk a uniformly chosen monotone swap
    path from a random order to its reverse (each candidate pair flips
    exactly once along it) and place the voters at sorted uniform positions
    on the path.  The returned witness is the voter order 0..n-1.

    The distribution over single-crossing elections carries no uniformity
    guarantee; uniform sampling of this domain is an open problem.
    """
    _check_sizes(m, n)
    rng = stream(seed, 0)
    first = rng.permutation(m)
    rank = np.argsort(first)
    path = [first.copy()]
    current = first.copy()
    for _ in range(m * (m - 1) // 2):
        admissible = [
            i for i in range(m - 1) if rank[current[i]] < rank[current[i + 1]]
        ]
        i = admissible[rng.integers(len(admissible))]
        current[i], current[i + 1] = current[i + 1], current[i]
        path.append(current.copy())
    path_arr = np.array(path)
    positions = np.sort(stream(seed, 1).integers(len(path), size=n))
    return (
        OrdinalElection(m, path_arr[positions]),
        StructureWitness("single_crossing", order=tuple(range(n))),
    )


def sample_group_separable(
    m: int, n: int, tree_kind: str = "balanced", seed: int = 0
) -> tuple[OrdinalElection, StructureWitness]:
    """Group-separable votes: build the requested tree over a shuffled leaf
    order, then flip every internal node independently with probability 1/2
    and read the leaves; uniform over the 2^(m-1) obtainable votes."""
    _check_sizes(m, n)
    leaf_order = stream(seed, 0).permutation(m)
    if tree_kind == "balanced":
        tree = GSTree.balanced(leaf_order)
    elif tree_kind == "caterpillar":
        tree = GSTree.caterpillar(leaf_order)
    else:
        raise ValueError(f"unknown tree kind {tree_kind!r}")
    internal = tree.num_internal
    flips = vote_table(seed, 1, n, max(internal, 1)) < 0.5
    votes = np.empty((n, m), dtype=np.int64)
    for i in range(n):
        votes[i] = tree.frontier(flips[i, :internal])
    return OrdinalElection(m, votes), StructureWitness("group_separable", tree=tree)


# ---------------------------------------------------------------------------
# reference elections


def reference_election(kind: str, m: int, n: int, seed: int = 0) -> OrdinalElection:
    """The map's reference points.

    ID: n copies of the identity order.  AN (antagonism): half identity,
    half its reverse.  UN (uniformity): every order once when n >= m!,
    otherwise an approximation of n distinct orders sampled without
    replacement (seeded; defaults to a fixed seed for reproducibility).
    """
    _check_sizes(m, n)
    if n < 1:
        raise ValueError("reference elections need at least one voter")
    identity = np.arange(m, dtype=np.int64)
    if kind == "ID":
        return OrdinalElection(m, np.tile(identity, (n, 1)))
    if kind == "AN":
        head = (n + 1) // 2
        votes = np.tile(identity, (n, 1))
        votes[head:] = identity[::-1]
        return OrdinalElection(m, votes)
    if kind == "UN":
        return OrdinalElection(m, _uniformity_votes(m, n, seed))
    raise ValueError(f"unknown reference kind {kind!r}; expected ID, AN or UN")


def _uniformity_votes(m: int, n: int, seed: int) -> np.ndarray:
    fact = math.factorial(m)
    rng = stream(seed, 0)
    blocks = []
    rounds, remainder = divmod(n, fact) if n >= fact else (0, n)
    if rounds:
        all_perms = np.array(list(permutations(range(m))), dtype=np.int64)
        blocks.extend([all_perms] * rounds)
    if remainder:
        if fact <= 500_000:
            all_perms = np.array(list(permutations(range(m))), dtype=np.int64)
            idx = rng.choice(fact, size=remainder, replace=False)
            blocks.append(all_perms[np.sort(idx)])
        else:
            seen: set[tuple[int, ...]] = set()
            out = []
            while len(out) < remainder:
                p = tuple(int(c) for c in rng.permutation(m))
                if p not in seen:
                    seen.add(p)
                    out.append(p)
            blocks.append(np.array(out, dtype=np.int64))
    return np.concatenate(blocks, axis=0) if blocks else np.empty((0, m), np.int64)
