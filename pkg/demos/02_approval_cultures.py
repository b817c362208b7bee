"""Tour of the approval statistical cultures.

Prints the mean ballot size and how concentrated the ballots are for each
culture, then shows the resampling model's hallmark: the mean ballot size
stays put while the dispersion parameter moves.
"""

import numpy as np

from prefforge import ResamplingSpec, sample, sample_resampling

M, N, SEED = 12, 200, 7

CULTURES = [
    ("p-ic", {"p": 0.25}),
    ("resampling", {"p": 0.25, "phi": 0.5}),
    ("noise", {"p": 0.25, "phi": 0.5, "metric": "hamming"}),
    ("noise", {"p": 0.25, "phi": 0.5, "metric": "jaccard"}),
    ("euclidean-approval", {"rule": "radius", "dim": 2}),
    ("euclidean-approval", {"rule": "top", "top_x": 3, "dim": 2}),
    ("ci", {}),
    ("vi", {}),
    ("party-list-urn", {"parties": 3, "alpha": 0.5}),
    ("truncated", {"base": "mallows", "norm_phi": 0.4, "top_x": 4}),
]

print("culture                                        mean |ballot|  distinct")
for culture, params in CULTURES:
    e = sample(culture, M, N, SEED, **params).election
    sizes = [len(b) for b in e.ballots]
    label = culture + f" {params}" if params else culture
    print(f"{label:<50} {np.mean(sizes):6.2f}   {len(set(e.ballots)):>5}")

print()
print("Resampling keeps the expected ballot size at floor(p*m) while phi")
print("only controls how much ballots disperse around the central one:")
for phi in (0.0, 0.25, 0.5, 0.75, 1.0):
    e = sample_resampling(10, 20_000, ResamplingSpec(p=0.5, phi=phi), seed=1)
    sizes = [len(b) for b in e.ballots]
    print(f"  phi={phi:<5} mean={np.mean(sizes):.3f}  distinct={len(set(e.ballots))}")
