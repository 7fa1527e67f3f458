"""Jaccard comparison of a source cluster against every cluster of every other pair.

The source cluster is a fixed row-index set; each candidate cluster from each
other feature-pair projection is scored by |A intersect B| / |A union B|, then
ranked (list view) or aggregated per pair into a feature-by-feature matrix
(matrix view).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import NOISE
from .pairgrid import FeaturePairKey, PairGrid

MAX = "max"
MEAN = "mean"
AGGREGATIONS = (MAX, MEAN)


class SimilarityError(ValueError):
    """Raised for invalid similarity queries."""


class NoiseSelectionError(SimilarityError):
    """Raised when a noise point is clicked: noise is not a selectable cohort."""


@dataclass(frozen=True)
class SourceSelection:
    pair: FeaturePairKey
    cluster_id: int
    members: frozenset


@dataclass(frozen=True)
class SimilarityRecord:
    pair: FeaturePairKey
    cluster_id: int
    jaccard: float
    cluster_size: int


@dataclass(frozen=True)
class SimilarityMatrix:
    features: tuple[str, ...]
    cells: np.ndarray  # d x d, symmetric, NaN = undefined (diagonal, failed pairs)
    aggregation: str
    ordering: tuple[int, ...]


def jaccard(a, b) -> float:
    """|A intersect B| / |A union B| over row-index sets; undefined for two empty sets."""
    sa, sb = set(a), set(b)
    union = len(sa | sb)
    if union == 0:
        raise SimilarityError("Jaccard is undefined for two empty sets")
    return len(sa & sb) / union


def _entry_for(grid: PairGrid, pair: FeaturePairKey):
    if pair in grid.failures:
        raise SimilarityError(
            f"pair {grid.pair_names(pair)} failed to cluster: {grid.failures[pair]}"
        )
    entry = grid.entries.get(pair)
    if entry is None:
        raise SimilarityError(f"no grid entry for pair {tuple(pair)}")
    return entry


def resolve_point(grid: PairGrid, pair: FeaturePairKey, row_index: int) -> SourceSelection:
    """The selection for the cluster containing a clicked row."""
    entry = _entry_for(grid, pair)
    n = len(entry.labels)
    if not 0 <= row_index < n:
        raise SimilarityError(f"row index {row_index} out of range [0, {n})")
    label = int(entry.labels[row_index])
    if label == NOISE:
        raise NoiseSelectionError("noise is not a selectable cohort")
    return SourceSelection(
        pair=pair,
        cluster_id=label,
        members=frozenset(int(i) for i in entry.members(label)),
    )


def resolve_cluster(grid: PairGrid, pair: FeaturePairKey, cluster_id: int) -> SourceSelection:
    """The selection for an explicit cluster id of a pair's labeling."""
    entry = _entry_for(grid, pair)
    if not 0 <= cluster_id < entry.n_clusters:
        raise SimilarityError(
            f"cluster {cluster_id} does not exist; pair has {entry.n_clusters} clusters"
        )
    return SourceSelection(
        pair=pair,
        cluster_id=cluster_id,
        members=frozenset(int(i) for i in entry.members(cluster_id)),
    )


def _pair_scores(entry, source_mask: np.ndarray, source_size: int) -> list[tuple[int, float, int]]:
    """(cluster_id, jaccard, cluster_size) for every non-noise cluster of one entry."""
    scores = []
    for cid in range(entry.n_clusters):
        mask = entry.labels == cid
        size = int(mask.sum())
        inter = int(np.count_nonzero(mask & source_mask))
        union = size + source_size - inter
        scores.append((cid, inter / union, size))
    return scores


def _source_mask(source: SourceSelection, n_rows: int) -> np.ndarray:
    mask = np.zeros(n_rows, dtype=bool)
    mask[list(source.members)] = True
    return mask


def rank_clusters(source: SourceSelection, grid: PairGrid) -> list[SimilarityRecord]:
    """All (pair != source pair, cluster) records, best Jaccard first.

    Ties break by lexicographic pair key, then ascending cluster id.
    """
    if not grid.entries:
        raise SimilarityError("empty grid")
    n_rows = len(next(iter(grid.entries.values())).labels)
    source_mask = _source_mask(source, n_rows)
    records = []
    for key in sorted(grid.entries):
        if key == source.pair:
            continue
        for cid, score, size in _pair_scores(grid.entries[key], source_mask, len(source.members)):
            records.append(SimilarityRecord(key, cid, score, size))
    records.sort(key=lambda r: (-r.jaccard, r.pair.i, r.pair.j, r.cluster_id))
    return records


def aggregate(scores, method: str) -> float:
    """Collapse one pair's per-cluster scores into a single value."""
    scores = list(scores)
    if not scores:
        raise SimilarityError("cannot aggregate an empty score list")
    if method == MAX:
        return max(scores)
    if method == MEAN:
        return sum(scores) / len(scores)
    raise SimilarityError(f"unknown aggregation {method!r}; expected one of {AGGREGATIONS}")


def build_matrix(source: SourceSelection, grid: PairGrid, method: str) -> SimilarityMatrix:
    """Feature-by-feature matrix of aggregated Jaccard scores.

    The source pair's own cell is included (its MAX is 1.0: the source cluster
    compares with itself). Failed pairs, and pairs whose labeling has no
    non-noise cluster, stay undefined (NaN), as does the diagonal.
    """
    if not grid.entries:
        raise SimilarityError("empty grid")
    if method not in AGGREGATIONS:
        raise SimilarityError(f"unknown aggregation {method!r}; expected one of {AGGREGATIONS}")
    d = len(grid.features)
    n_rows = len(next(iter(grid.entries.values())).labels)
    source_mask = _source_mask(source, n_rows)
    cells = np.full((d, d), np.nan)
    for key, entry in grid.entries.items():
        scores = [s for _, s, _ in _pair_scores(entry, source_mask, len(source.members))]
        if not scores:
            continue
        value = aggregate(scores, method)
        cells[key.i, key.j] = value
        cells[key.j, key.i] = value
    return SimilarityMatrix(
        features=grid.features,
        cells=cells,
        aggregation=method,
        ordering=tuple(range(d)),
    )
