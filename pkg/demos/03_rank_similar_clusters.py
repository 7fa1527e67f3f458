"""
Finding other feature pairs that isolate the same cohort
========================================================

The core loop: cluster every unique feature pair, pick a source cluster in
one pair, then rank every cluster of every other pair by Jaccard overlap
with the source. High-ranking pairs identify alternative measurements that
capture the same subgroup.
"""

import time

import numpy as np

from cif import (
    ClusteringParams,
    GridCache,
    default_dataset_bytes,
    load_csv,
    rank_clusters,
    resolve_point,
)
from cif.report import resolve_source_pair

dataset = load_csv(default_dataset_bytes())
params = ClusteringParams(algorithm="kmeans", k=5, seed=42)

# `status` is the clinical ground-truth label, not a biomarker, so it is
# excluded from pairing; 22 numeric features remain -> 231 unique pairs.
cache = GridCache()
started = time.perf_counter()
grid = cache.compute_grid(dataset, params, exclude=("status",), parallelism=8)
print(f"clustered {len(grid.entries)} pairs in {time.perf_counter() - started:.2f}s")

# Select the cohort by clicking a recording deep in the low-frequency region
# (the service resolves a clicked scatterplot point the same way).
fo = dataset.column("MDVP:Fo(Hz)").values
flo = dataset.column("MDVP:Flo(Hz)").values
row = int(np.argmin(fo + flo))
source_pair = resolve_source_pair(grid.features, "MDVP:Flo(Hz)", "MDVP:Fo(Hz)")
source = resolve_point(grid, source_pair, row)
print(f"source: row {row} -> cluster {source.cluster_id} with {len(source.members)} members")

records = rank_clusters(source, grid)
print(f"\n{len(records)} candidate clusters ranked; top 15 by Jaccard overlap:")
print(f"  {'jaccard':>8s}  {'size':>4s}  pair")
for record in records[:15]:
    names = grid.pair_names(record.pair)
    print(f"  {record.jaccard:8.3f}  {record.cluster_size:4d}  {names[0]} / {names[1]}"
          f"  (cluster {record.cluster_id})")
