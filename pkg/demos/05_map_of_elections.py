"""Map of elections: embed a set of elections by pairwise isomorphic swap
distance, anchored by the ID / AN / UN reference points.

Runs at a reduced size (m=6, n=24) so the whole map takes seconds; the
canonical figure scale is MAP_DEFAULT_SIZE = (8, 96).  Writes map.csv and
map.json next to this script.
"""

from pathlib import Path

import numpy as np

from prefforge import map_layout, sample

M, N = 6, 24
OUT = Path(__file__).parent

entries = []
for norm_phi in (0.2, 0.5, 0.8):
    entries.append((f"mallows_{norm_phi}", sample("mallows", M, N, seed=1, norm_phi=norm_phi)))
for culture in ("ic", "urn-gamma", "walsh", "conitzer", "spoc", "single-crossing"):
    entries.append((culture, sample(culture, M, N, seed=2)))
entries.append(("gs_cat", sample("group-separable", M, N, seed=3, tree="caterpillar")))
for dim in (1, 2, 5):
    entries.append((f"cube_{dim}d", sample("euclidean", M, N, seed=4, dim=dim)))

elections = [(label, r.election) for label, r in entries]
embedding = map_layout(elections, include_refs=True, distance="heuristic", seed=0)

print(f"{len(embedding.labels)} points, final stress-1 {embedding.kruskal_stress:.3f}")
coords = dict(zip(embedding.labels, embedding.coordinates))
for label in embedding.labels:
    x, y = coords[label]
    print(f"  {label:<16} ({x:7.2f}, {y:7.2f})")

(OUT / "map.csv").write_text(embedding.to_csv())
(OUT / "map.json").write_text(embedding.to_json() + "\n")
print("wrote map.csv and map.json")

id_pt, un_pt = coords["ID"], coords["UN"]
for norm_phi in (0.2, 0.5, 0.8):
    rel = coords[f"mallows_{norm_phi}"] - id_pt
    t = float(rel @ (un_pt - id_pt)) / float((un_pt - id_pt) @ (un_pt - id_pt))
    print(f"mallows norm_phi={norm_phi}: {t:.2f} of the way from ID to UN")
