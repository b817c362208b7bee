"""Stress-minimizing embeddings: maps of elections and vote microscopes.

The embedding is plot data only (coordinates, labels, disc radii); no
figures are rendered here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import OrdinalElection
from .metrics import (
    election_distance_exact,
    election_distance_heuristic,
    vote_distance_matrix,
)
from .ordinal import reference_election
from .rng import stream

REFERENCE_LABELS = ("ID", "AN", "UN")

# canonical figure scales: maps stay small for distance computations,
# microscopes are larger for visual structure
MAP_DEFAULT_SIZE = (8, 96)
MICROSCOPE_DEFAULT_SIZE = (10, 1000)


def check_distance_matrix(D: np.ndarray) -> np.ndarray:
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {D.shape}")
    if not np.allclose(D, D.T, rtol=0, atol=1e-12):
        raise ValueError("distance matrix must be symmetric")
    if (D < 0).any():
        raise ValueError("distances must be nonnegative")
    if not np.allclose(np.diag(D), 0.0, atol=1e-12):
        raise ValueError("distance matrix must have a zero diagonal")
    return D


@dataclass(frozen=True)
class Embedding:
    """Low-dimensional layout of a distance matrix.

    ``stress`` is the raw squared-error stress sum_{i<j} (D_ij - |x_i -
    x_j|)^2; ``kruskal_stress`` is Kruskal's stress-1 normalization of the
    same residuals.  ``radii`` are sqrt(multiplicity), so disc area is
    proportional to the number of identical votes.
    """

    coordinates: np.ndarray
    stress: float
    labels: tuple[str, ...]
    radii: np.ndarray
    stress_history: np.ndarray
    kruskal_stress: float
    n_iter: int

    def to_csv(self) -> str:
        lines = ["label,x,y,radius"]
        for label, point, radius in zip(self.labels, self.coordinates, self.radii):
            x = point[0]
            y = point[1] if point.shape[0] > 1 else 0.0
            lines.append(f"{label},{x:.10g},{y:.10g},{radius:.10g}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "stress": self.stress,
                "kruskal_stress": self.kruskal_stress,
                "n_iter": self.n_iter,
                "points": [
                    {
                        "label": label,
                        "coordinates": [float(v) for v in point],
                        "radius": float(radius),
                    }
                    for label, point, radius in zip(
                        self.labels, self.coordinates, self.radii
                    )
                ],
            },
            indent=2,
        )


def _pairwise_distances(X: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - X[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def _stress(D: np.ndarray, delta: np.ndarray) -> float:
    return float(np.square(D - delta).sum() / 2.0)


def _classical_mds(D: np.ndarray, dims: int) -> np.ndarray:
    """Torgerson double-centering start: exact on Euclidean-realizable
    matrices, a good warm start otherwise.  Eigenvector signs are
    canonicalized so the start is deterministic."""
    k = D.shape[0]
    J = np.eye(k) - np.full((k, k), 1.0 / k)
    B = -0.5 * J @ (D * D) @ J
    eigvals, eigvecs = np.linalg.eigh(B)
    order = np.argsort(eigvals)[::-1][:dims]
    vals = np.clip(eigvals[order], 0.0, None)
    vecs = eigvecs[:, order]
    flip = np.sign(vecs[np.argmax(np.abs(vecs), axis=0), np.arange(vecs.shape[1])])
    flip[flip == 0] = 1.0
    X = vecs * flip * np.sqrt(vals)
    if X.shape[1] < dims:
        X = np.pad(X, ((0, 0), (0, dims - X.shape[1])))
    return X


def _smacof_run(
    D: np.ndarray, X: np.ndarray, max_iter: int, rel_tol: float
) -> tuple[np.ndarray, float, list[float], int, float]:
    """One majorization descent; stress is non-increasing throughout."""
    k = D.shape[0]
    delta = _pairwise_distances(X)
    stress = _stress(D, delta)
    history = [stress]
    iterations = 0
    for _ in range(max_iter):
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(delta > 0, D / np.where(delta > 0, delta, 1.0), 0.0)
        B = -ratio
        np.fill_diagonal(B, 0.0)
        np.fill_diagonal(B, -B.sum(axis=1))
        X_next = B @ X / k
        delta_next = _pairwise_distances(X_next)
        stress_next = _stress(D, delta_next)
        if stress_next > stress:
            break  # numerically converged; keep the monotone sequence
        X, delta = X_next, delta_next
        iterations += 1
        history.append(stress_next)
        if stress == 0.0 or (stress - stress_next) / max(stress, 1e-300) < rel_tol:
            stress = stress_next
            break
        stress = stress_next
    sum_delta_sq = float(np.square(delta).sum() / 2.0)
    return X, stress, history, iterations, sum_delta_sq


def mds_embed(
    D: np.ndarray,
    dims: int = 2,
    max_iter: int = 1000,
    rel_tol: float = 1e-6,
    seed: int = 0,
    n_init: int = 4,
    labels: "Sequence[str] | None" = None,
    radii: "np.ndarray | None" = None,
) -> Embedding:
    """Metric MDS by SMACOF majorization (Guttman transform).

    Runs ``n_init`` descents and keeps the lowest final stress: the first
    start is the deterministic classical-MDS configuration (exact on
    Euclidean-realizable input), the rest are uniform random in [0,1]^dims
    from the seed.  A lone random start gets trapped in local minima on
    roughly a fifth of even exactly-embeddable matrices, which is why the
    warm start and restarts exist.

    Within a run stress never increases; a run stops when the relative
    stress decrease falls below ``rel_tol`` (or at ``max_iter``).  An
    all-zero matrix collapses every point to the origin with zero stress.
    The returned layout is centered at the origin.
    """
    D = check_distance_matrix(D)
    k = D.shape[0]
    if dims < 1:
        raise ValueError(f"dims must be >= 1, got {dims}")
    if n_init < 1:
        raise ValueError(f"n_init must be >= 1, got {n_init}")
    if labels is None:
        labels = tuple(str(i) for i in range(k))
    if len(labels) != k:
        raise ValueError(f"expected {k} labels, got {len(labels)}")
    if radii is None:
        radii = np.ones(k)
    radii = np.asarray(radii, dtype=np.float64)
    if radii.shape != (k,):
        raise ValueError(f"expected {k} radii")

    if k == 0:
        empty = np.zeros((0, dims))
        return Embedding(empty, 0.0, tuple(labels), radii, np.zeros(0), 0.0, 0)
    if k == 1:
        X = np.zeros((1, dims))
        return Embedding(X, 0.0, tuple(labels), radii, np.zeros(1), 0.0, 0)

    best = None
    for i in range(n_init):
        if i == 0:
            X0 = _classical_mds(D, dims)
        else:
            X0 = stream(seed, i - 1).random((k, dims))
        run = _smacof_run(D, X0, max_iter, rel_tol)
        if best is None or run[1] < best[1]:
            best = run
        if best[1] == 0.0:
            break
    X, stress, history, iterations, sum_delta_sq = best
    X = X - X.mean(axis=0, keepdims=True)
    kruskal = float(np.sqrt(stress / sum_delta_sq)) if sum_delta_sq > 0 else 0.0
    return Embedding(
        X, stress, tuple(labels), radii, np.array(history), kruskal, iterations
    )


def microscope_layout(
    e: OrdinalElection,
    dims: int = 2,
    max_iter: int = 1000,
    rel_tol: float = 1e-6,
    seed: int = 0,
    n_init: int = 4,
) -> Embedding:
    """Embed one election's distinct votes by their pairwise swap
    distances; one disc per distinct vote, disc radius sqrt(count of
    identical votes)."""
    if e.num_voters < 1:
        raise ValueError("microscope needs at least one vote")
    D, mult = vote_distance_matrix(e, deduplicate=True)
    votes, _ = np.unique(e.votes, axis=0, return_counts=True)
    labels = tuple(">".join(str(int(c)) for c in vote) for vote in votes)
    return mds_embed(
        D,
        dims=dims,
        max_iter=max_iter,
        rel_tol=rel_tol,
        seed=seed,
        n_init=n_init,
        labels=labels,
        radii=np.sqrt(mult.astype(np.float64)),
    )


def map_distance_matrix(
    elections: Sequence[OrdinalElection],
    distance: str = "heuristic",
    restarts: int = 20,
    seed: int = 0,
) -> np.ndarray:
    """Pairwise isomorphic swap distances between elections (exact or the
    heuristic upper bound)."""
    if distance not in ("exact", "heuristic"):
        raise ValueError(f"distance must be 'exact' or 'heuristic', got {distance!r}")
    k = len(elections)
    D = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            if distance == "exact":
                d = election_distance_exact(elections[i], elections[j])
            else:
                d = election_distance_heuristic(
                    elections[i], elections[j], restarts=restarts, seed=seed
                )
            D[i, j] = D[j, i] = d
    return D


def map_layout(
    elections: Sequence[tuple[str, OrdinalElection]],
    include_refs: bool = True,
    distance: str = "heuristic",
    dims: int = 2,
    max_iter: int = 1000,
    rel_tol: float = 1e-6,
    seed: int = 0,
    restarts: int = 20,
    n_init: int = 4,
) -> Embedding:
    """Map of elections: MDS layout of pairwise isomorphic distances, with
    the ID / AN / UN reference elections appended when requested.

    All elections must share the same numbers of candidates and voters.
    With the heuristic distance the plotted distances are upper bounds.
    """
    labeled = list(elections)
    if not labeled:
        raise ValueError("map needs at least one election")
    sizes = {(e.num_candidates, e.num_voters) for _, e in labeled}
    if len(sizes) != 1:
        raise ValueError(f"elections have mixed sizes: {sorted(sizes)}")
    (m, n) = next(iter(sizes))
    if include_refs:
        for kind in REFERENCE_LABELS:
            labeled.append((kind, reference_election(kind, m, n, seed=seed)))
    D = map_distance_matrix(
        [e for _, e in labeled], distance=distance, restarts=restarts, seed=seed
    )
    return mds_embed(
        D,
        dims=dims,
        max_iter=max_iter,
        rel_tol=rel_tol,
        seed=seed,
        n_init=n_init,
        labels=tuple(label for label, _ in labeled),
    )
