"""Shared analysis pipeline: grid, ranking, matrix, ordering, canonical report.

The CLI and the HTTP service both call build_analysis_report, so for the same
inputs they emit the same analytical JSON payload byte for byte.
"""

from __future__ import annotations

from .clustering import ClusteringParams
from .dataset import Dataset
from .pairgrid import FeaturePairKey, GridCache, numeric_features
from .similarity import (
    MAX,
    AGGREGATIONS,
    SimilarityError,
    build_matrix,
    rank_clusters,
    resolve_cluster,
    resolve_point,
)
from .seriation import (
    OLO,
    ORDERINGS,
    ORIGINAL,
    feature_distances,
    hierarchical_cluster,
    optimal_leaf_order,
    original_ordering,
)

SCHEMA_VERSION = 1


def resolve_source_pair(features: tuple[str, ...], feature_x: str, feature_y: str) -> FeaturePairKey:
    """Map a named feature pair onto its grid key (order-insensitive)."""
    if feature_x == feature_y:
        raise SimilarityError("source pair needs two distinct features")
    for name in (feature_x, feature_y):
        if name not in features:
            raise SimilarityError(
                f"feature {name!r} is not an included numeric feature of this grid"
            )
    a, b = features.index(feature_x), features.index(feature_y)
    return FeaturePairKey(min(a, b), max(a, b))


def build_analysis_report(
    dataset: Dataset,
    params: ClusteringParams,
    feature_x: str,
    feature_y: str,
    *,
    row_index: int | None = None,
    cluster_id: int | None = None,
    aggregation: str = MAX,
    ordering_method: str = ORIGINAL,
    exclude: tuple[str, ...] = (),
    cache: GridCache | None = None,
    parallelism: int = 1,
) -> dict:
    """Run the full selected-cluster comparison and return the report dict.

    Exactly one of row_index / cluster_id selects the source cluster.
    """
    if aggregation not in AGGREGATIONS:
        raise SimilarityError(f"unknown aggregation {aggregation!r}; expected one of {AGGREGATIONS}")
    if ordering_method not in ORDERINGS:
        raise SimilarityError(f"unknown ordering {ordering_method!r}; expected one of {ORDERINGS}")
    if (row_index is None) == (cluster_id is None):
        raise SimilarityError("select the source cluster by exactly one of row index or cluster id")

    if cache is None:
        cache = GridCache()
    features = tuple(numeric_features(dataset, exclude))
    source_pair = resolve_source_pair(features, feature_x, feature_y)
    grid = cache.compute_grid(dataset, params, exclude=exclude, parallelism=parallelism)

    if row_index is not None:
        source = resolve_point(grid, source_pair, row_index)
    else:
        source = resolve_cluster(grid, source_pair, cluster_id)

    records = rank_clusters(source, grid)
    matrix = build_matrix(source, grid, aggregation)
    if ordering_method == OLO:
        distances = feature_distances(matrix)
        ordering = optimal_leaf_order(hierarchical_cluster(distances), distances)
    else:
        ordering = original_ordering(len(features))

    return {
        "schema_version": SCHEMA_VERSION,
        "dataset_id": dataset.id,
        "params": params.to_dict(),
        "aggregation": aggregation,
        "ordering": ordering_method,
        "source_cluster": {
            "pair": list(grid.pair_names(source.pair)),
            "cluster_id": source.cluster_id,
            "size": len(source.members),
            "members": sorted(source.members),
        },
        "list": [
            {
                "pair": list(grid.pair_names(r.pair)),
                "cluster_id": r.cluster_id,
                "jaccard": r.jaccard,
                "cluster_size": r.cluster_size,
            }
            for r in records
        ],
        "matrix": {
            "features": list(matrix.features),
            "cells": matrix.cells,
            "permutation": list(ordering.permutation),
            "cost": ordering.cost,
        },
        "warnings": [
            f"pair {grid.pair_names(key)} failed: {message}"
            for key, message in sorted(grid.failures.items())
        ],
    }
