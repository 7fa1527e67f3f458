"""
Clustering one 2-feature projection
===================================

The two kernels behind the scatterplot panel: K-Means with k-means++ seeding
and DBSCAN. Both run on the z-scored pair and are fully deterministic, so the
same request always yields the same labeling.
"""

import numpy as np

from cif import ClusteringParams, dbscan_2d, default_dataset_bytes, kmeans_2d, load_csv, zscore

dataset = load_csv(default_dataset_bytes())
points = np.column_stack([
    zscore(dataset, "MDVP:Fo(Hz)"),
    zscore(dataset, "MDVP:Flo(Hz)"),
])

kmeans = kmeans_2d(points, ClusteringParams(algorithm="kmeans", k=5, seed=42))
print(f"k-means: {kmeans.n_clusters} clusters, inertia {kmeans.inertia:.2f}")
for c in range(kmeans.n_clusters):
    members = kmeans.members(c)
    print(f"  cluster {c}: {len(members):3d} recordings")

# Rerunning with the same seed reproduces the labels bit for bit.
again = kmeans_2d(points, ClusteringParams(algorithm="kmeans", k=5, seed=42))
print("rerun identical:", bool(np.array_equal(kmeans.labels, again.labels)))

# DBSCAN finds density clusters; points in no dense region are labeled -1
# (noise) and are never selectable as a source cohort.
dbscan = dbscan_2d(points, ClusteringParams(algorithm="dbscan", eps=0.5, min_samples=5))
noise = int((dbscan.labels == -1).sum())
print(f"\ndbscan (eps=0.5, min_samples=5): {dbscan.n_clusters} clusters, {noise} noise points")
for c in range(dbscan.n_clusters):
    print(f"  cluster {c}: {len(dbscan.members(c)):3d} recordings")
