"""Deterministic 2D clustering kernels: K-Means (k-means++ init) and DBSCAN.

Both kernels are pure functions of (points, params). Identical inputs give
bit-identical labelings, across runs and across threads, which is what makes
grid results cacheable and reports reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

NOISE = -1

KMEANS = "kmeans"
DBSCAN = "dbscan"


class ClusteringError(ValueError):
    """Raised for invalid clustering inputs or parameters."""


@dataclass(frozen=True)
class ClusteringParams:
    algorithm: str = KMEANS
    k: int = 5
    eps: float = 0.5
    min_samples: int = 5
    seed: int = 42
    max_iter: int = 300
    tol: float = 1e-4

    def __post_init__(self):
        if self.algorithm not in (KMEANS, DBSCAN):
            raise ClusteringError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm == KMEANS and self.k < 1:
            raise ClusteringError(f"k must be a positive integer, got {self.k}")
        if self.algorithm == DBSCAN:
            if not self.eps > 0:
                raise ClusteringError(f"eps must be positive, got {self.eps}")
            if self.min_samples < 1:
                raise ClusteringError(f"min_samples must be >= 1, got {self.min_samples}")
        if self.max_iter < 1:
            raise ClusteringError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.tol < 0:
            raise ClusteringError(f"tol must be nonnegative, got {self.tol}")

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "k": self.k,
            "eps": self.eps,
            "min_samples": self.min_samples,
            "seed": self.seed,
            "max_iter": self.max_iter,
            "tol": self.tol,
        }


@dataclass(frozen=True)
class ClusterLabeling:
    labels: np.ndarray  # int labels >= 0, or NOISE (-1, DBSCAN only)
    n_clusters: int
    params: ClusteringParams
    inertia: float | None = None  # K-Means only

    def __eq__(self, other):
        if not isinstance(other, ClusterLabeling):
            return NotImplemented
        return (
            np.array_equal(self.labels, other.labels)
            and self.n_clusters == other.n_clusters
            and self.inertia == other.inertia
            and self.params == other.params
        )

    def members(self, cluster_id: int) -> np.ndarray:
        return np.flatnonzero(self.labels == cluster_id)


def canonical_relabel(labels: np.ndarray) -> np.ndarray:
    """Renumber clusters so the lowest-index row gets cluster 0, the next new
    cluster encountered in row order gets 1, and so on. NOISE stays -1.
    Idempotent."""
    out = np.empty_like(labels)
    mapping: dict[int, int] = {}
    for i, lab in enumerate(labels):
        lab = int(lab)
        if lab == NOISE:
            out[i] = NOISE
            continue
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out


def _check_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ClusteringError(f"expected an n x 2 point matrix, got shape {pts.shape}")
    if pts.shape[0] == 0:
        raise ClusteringError("empty input: need at least one point")
    if not np.all(np.isfinite(pts)):
        raise ClusteringError("points must be finite")
    return pts


def _kmeanspp_init(pts: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: first centroid uniform, each next sampled with
    probability proportional to squared distance to the nearest chosen one."""
    n = pts.shape[0]
    centroids = np.empty((k, 2))
    first = int(rng.integers(n))
    centroids[0] = pts[first]
    d2 = ((pts - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        r = rng.random() * total
        idx = int(np.searchsorted(np.cumsum(d2), r, side="right"))
        idx = min(idx, n - 1)
        centroids[c] = pts[idx]
        d2 = np.minimum(d2, ((pts - centroids[c]) ** 2).sum(axis=1))
    return centroids


def _assign(pts: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # argmin breaks ties toward the lowest centroid index
    d2 = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return d2.argmin(axis=1)


def _update(pts: np.ndarray, labels: np.ndarray, centroids: np.ndarray, k: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=k)
    new = np.empty_like(centroids)
    for dim in (0, 1):
        sums = np.bincount(labels, weights=pts[:, dim], minlength=k)
        new[:, dim] = np.where(counts > 0, sums / np.maximum(counts, 1), centroids[:, dim])
    if np.any(counts == 0):
        # Reseed each emptied cluster with the point farthest from its
        # assigned centroid, then treat that point as moved.
        labels = labels.copy()
        dist = ((pts - new[labels]) ** 2).sum(axis=1)
        for c in np.flatnonzero(counts == 0):
            far = int(dist.argmax())
            new[c] = pts[far]
            labels[far] = c
            dist[far] = 0.0
    return new


def kmeans_2d(points, params: ClusteringParams) -> ClusterLabeling:
    """Lloyd's algorithm with k-means++ seeding from a PRNG seeded by params.seed.

    Iterates until the largest centroid move is <= params.tol or params.max_iter
    is reached; returns a canonically relabeled partition and its inertia.
    """
    labeling, _ = kmeans_2d_with_history(points, params)
    return labeling


def kmeans_2d_with_history(points, params: ClusteringParams) -> tuple[ClusterLabeling, list[float]]:
    """Like kmeans_2d, also returning the inertia after every assignment step."""
    pts = _check_points(points)
    n = pts.shape[0]
    k = params.k
    if k < 1:
        raise ClusteringError(f"k must be a positive integer, got {k}")
    n_distinct = np.unique(pts, axis=0).shape[0]
    if k > n_distinct:
        raise ClusteringError(f"k={k} exceeds the {n_distinct} distinct points in this projection")

    rng = np.random.default_rng(params.seed)
    centroids = _kmeanspp_init(pts, k, rng)
    history: list[float] = []
    labels = _assign(pts, centroids)
    for _ in range(params.max_iter):
        history.append(float(((pts - centroids[labels]) ** 2).sum()))
        new_centroids = _update(pts, labels, centroids, k)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        labels = _assign(pts, centroids)
        if shift <= params.tol:
            break
    inertia = float(((pts - centroids[labels]) ** 2).sum())
    history.append(inertia)
    labels = canonical_relabel(labels)
    n_clusters = int(labels.max()) + 1
    return (
        ClusterLabeling(labels=labels, n_clusters=n_clusters, params=params, inertia=inertia),
        history,
    )


def dbscan_2d(points, params: ClusteringParams) -> ClusterLabeling:
    """Density clustering with Euclidean closed eps-balls (self included).

    A point is core iff its eps-ball holds >= min_samples points; clusters are
    the connected components of core points; a border point joins the cluster
    of the first core point that reaches it when expansion seeds are scanned
    in row order. Everything else is NOISE.
    """
    pts = _check_points(points)
    n = pts.shape[0]
    eps2 = params.eps ** 2

    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    neighbors = [np.flatnonzero(d2[i] <= eps2) for i in range(n)]
    core = np.array([len(nb) >= params.min_samples for nb in neighbors])

    UNCLASSIFIED = -2
    labels = np.full(n, UNCLASSIFIED, dtype=np.int64)
    cluster_id = 0
    for seed in range(n):
        if labels[seed] != UNCLASSIFIED or not core[seed]:
            continue
        labels[seed] = cluster_id
        queue = deque([seed])
        while queue:
            point = queue.popleft()
            for nb in neighbors[point]:
                if labels[nb] != UNCLASSIFIED:
                    continue
                labels[nb] = cluster_id
                if core[nb]:
                    queue.append(nb)
        cluster_id += 1
    labels[labels == UNCLASSIFIED] = NOISE

    labels = canonical_relabel(labels)
    return ClusterLabeling(labels=labels, n_clusters=cluster_id, params=params, inertia=None)
