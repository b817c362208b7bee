"""Election-size regimes: rough candidate/voter ranges observed across
experimental setups, from tiny committee votes to participatory budgeting.

Open-ended ranges carry practical sampling caps (documented per regime);
wide voter ranges are sampled log-uniformly so small sizes actually occur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import stream


@dataclass(frozen=True)
class SizeRegime:
    name: str
    candidates: tuple[int, int]  # inclusive
    voters: tuple[int, int]  # inclusive; sampling cap if the regime is open-ended
    voters_at_most_candidates: bool = False  # ground truth: m >= n

    def sample(self, rng: np.random.Generator) -> tuple[int, int]:
        n = _draw(rng, *self.voters)
        if self.voters_at_most_candidates:
            lo = max(self.candidates[0], n)
            m = _draw(rng, lo, max(self.candidates[1], lo))
        else:
            m = _draw(rng, *self.candidates)
        return m, n


def _draw(rng: np.random.Generator, lo: int, hi: int) -> int:
    if hi <= lo:
        return lo
    if hi / lo > 20:  # wide range: log-uniform, else small sizes never appear
        value = math.exp(rng.uniform(math.log(lo), math.log(hi + 1)))
        return min(int(value), hi)
    return int(rng.integers(lo, hi + 1))


REGIMES = {
    r.name: r
    for r in (
        SizeRegime("small", (2, 30), (2, 30)),
        SizeRegime("political", (2, 20), (2000, 100_000)),  # n >= 2000, capped
        SizeRegime("institutional", (2, 30), (30, 2000)),
        SizeRegime("participatory_budgeting", (4, 200), (200, 100_000)),
        SizeRegime("ground_truth", (2, 250), (2, 50), voters_at_most_candidates=True),
        SizeRegime("multiwinner_lab", (100, 500), (100, 500)),
    )
}


def sample_regime(name: str, seed: int) -> tuple[int, int]:
    """Draw (m, n) for the named regime, deterministically from the seed."""
    if name not in REGIMES:
        raise ValueError(
            f"unknown regime {name!r}; expected one of {sorted(REGIMES)}"
        )
    return REGIMES[name].sample(stream(seed, 7))
