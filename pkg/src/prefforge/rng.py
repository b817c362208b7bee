"""Seed plumbing shared by all samplers.

Every sampler is a pure function of (parameters, seed).  A single 64-bit
seed is fanned out into named substreams via ``numpy``'s SeedSequence
(PCG64 underneath, stable across platforms).  Per-vote randomness is
materialized as row ``i`` of a substream's uniform table, so vote ``i``
sees the same bits whether the election is generated sequentially, in
chunks, or in parallel.
"""

from __future__ import annotations

import numpy as np

_SEED_MASK = (1 << 64) - 1


def normalize_seed(seed: int) -> int:
    """Reduce an arbitrary Python int to the 64-bit seed space."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    return int(seed) & _SEED_MASK


def stream(seed: int, *path: int) -> np.random.Generator:
    """Deterministic generator for the substream named by ``path``.

    Same (seed, path) always yields the same stream; distinct paths are
    statistically independent.
    """
    ss = np.random.SeedSequence(normalize_seed(seed), spawn_key=tuple(path))
    return np.random.default_rng(ss)


def vote_table(seed: int, stream_id: int, n: int, width: int) -> np.ndarray:
    """(n, width) uniforms where row i is vote i's private randomness."""
    if n == 0 or width == 0:
        return np.empty((n, width))
    return stream(seed, stream_id).random((n, width))
