"""All unique 2-feature projections: enumeration, clustering fan-out, memoization.

Every included numeric feature pair gets clustered under one shared parameter
set. Results are cached in memory keyed by (dataset id, feature names, params)
and optionally written through to a cache directory, one JSON file per grid.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .clustering import (
    DBSCAN,
    KMEANS,
    ClusteringError,
    ClusteringParams,
    ClusterLabeling,
    dbscan_2d,
    kmeans_2d,
)
from .dataset import Dataset, DatasetError, zscore
from .jsonio import canonical_dumps

GRID_FORMAT_VERSION = 1


class GridError(ValueError):
    """Raised for invalid pair-grid requests."""


class FeaturePairKey(NamedTuple):
    """Indices (i < j) into the grid's numeric-feature list."""

    i: int
    j: int


@dataclass(frozen=True)
class PairGrid:
    dataset_id: str
    params: ClusteringParams
    features: tuple[str, ...]
    entries: dict  # FeaturePairKey -> ClusterLabeling
    failures: dict  # FeaturePairKey -> error message
    complete: bool

    def pair_names(self, key: FeaturePairKey) -> tuple[str, str]:
        return self.features[key.i], self.features[key.j]


def numeric_features(dataset: Dataset, exclude: tuple[str, ...] = ()) -> list[str]:
    """Included numeric feature names, in dataset column order."""
    known = {c.name for c in dataset.columns}
    for name in exclude:
        if name not in known:
            raise DatasetError(f"cannot exclude unknown feature {name!r}")
    excluded = set(exclude)
    return [n for n in dataset.numeric_names() if n not in excluded]


def enumerate_pairs(dataset: Dataset, exclude: tuple[str, ...] = ()) -> list[FeaturePairKey]:
    """All d(d-1)/2 unique pairs over included numeric features, lexicographic."""
    d = len(numeric_features(dataset, exclude))
    if d < 2:
        raise GridError(f"need at least 2 numeric features to form pairs, have {d}")
    return [FeaturePairKey(i, j) for i in range(d) for j in range(i + 1, d)]


def pair_points(dataset: Dataset, names: tuple[str, str]) -> np.ndarray:
    """The z-scored n x 2 projection onto a feature pair."""
    return np.column_stack([zscore(dataset, names[0]), zscore(dataset, names[1])])


def run_kernel(points: np.ndarray, params: ClusteringParams) -> ClusterLabeling:
    if params.algorithm == KMEANS:
        return kmeans_2d(points, params)
    if params.algorithm == DBSCAN:
        return dbscan_2d(points, params)
    raise ClusteringError(f"unknown algorithm {params.algorithm!r}")


def grid_cache_token(params: ClusteringParams, features: tuple[str, ...]) -> str:
    """Stable hash identifying one grid configuration on disk."""
    payload = canonical_dumps({"params": params.to_dict(), "features": list(features)})
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


class GridCache:
    """Memoizes per-pair labelings; fans grids out over a worker pool.

    Duplicate in-flight computations for one key are coalesced: the second
    caller blocks on the first one's lock and then reads the cached result.
    """

    def __init__(self, cache_dir: str | Path | None = None):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._labels: dict[tuple, ClusterLabeling] = {}
        self._locks: dict[tuple, threading.Lock] = {}
        self._mutex = threading.Lock()

    def _key(self, dataset: Dataset, names: tuple[str, str], params: ClusteringParams) -> tuple:
        return (dataset.id, names[0], names[1], params)

    def _lock_for(self, key: tuple) -> threading.Lock:
        with self._mutex:
            return self._locks.setdefault(key, threading.Lock())

    def compute_pair(
        self,
        dataset: Dataset,
        key: FeaturePairKey,
        params: ClusteringParams,
        features: list[str] | None = None,
    ) -> ClusterLabeling:
        """Cluster one z-scored pair projection, reusing any cached labeling."""
        if features is None:
            features = numeric_features(dataset)
        if not (0 <= key.i < key.j < len(features)):
            raise GridError(f"invalid pair key {key} for {len(features)} features")
        names = (features[key.i], features[key.j])
        cache_key = self._key(dataset, names, params)
        cached = self._labels.get(cache_key)
        if cached is not None:
            return cached
        with self._lock_for(cache_key):
            cached = self._labels.get(cache_key)
            if cached is not None:
                return cached
            labeling = run_kernel(pair_points(dataset, names), params)
            self._labels[cache_key] = labeling
            return labeling

    def compute_grid(
        self,
        dataset: Dataset,
        params: ClusteringParams,
        *,
        exclude: tuple[str, ...] = (),
        parallelism: int = 1,
    ) -> PairGrid:
        """Cluster every included pair; per-pair failures are recorded, not fatal."""
        if parallelism < 1:
            raise GridError(f"parallelism must be >= 1, got {parallelism}")
        features = tuple(numeric_features(dataset, exclude))
        keys = enumerate_pairs(dataset, exclude)

        loaded = self._load_from_disk(dataset, params, features)
        if loaded is not None:
            for key, labeling in loaded.entries.items():
                self._labels.setdefault(self._key(dataset, loaded.pair_names(key), params), labeling)
            return loaded

        entries: dict[FeaturePairKey, ClusterLabeling] = {}
        failures: dict[FeaturePairKey, str] = {}

        def work(key: FeaturePairKey):
            try:
                return key, self.compute_pair(dataset, key, params, list(features)), None
            except (ClusteringError, DatasetError) as exc:
                return key, None, str(exc)

        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            for key, labeling, error in pool.map(work, keys):
                if error is None:
                    entries[key] = labeling
                else:
                    failures[key] = error

        if not entries:
            raise GridError(f"every pair failed; first error: {failures[keys[0]]}")
        grid = PairGrid(
            dataset_id=dataset.id,
            params=params,
            features=features,
            entries=entries,
            failures=failures,
            complete=True,
        )
        self._write_to_disk(grid)
        return grid

    # Disk layout: <cache>/<dataset-id>/<grid-token>/grid.json (see README).

    def _grid_path(self, dataset_id: str, params: ClusteringParams, features: tuple[str, ...]) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / dataset_id / grid_cache_token(params, features) / "grid.json"

    def _write_to_disk(self, grid: PairGrid) -> None:
        path = self._grid_path(grid.dataset_id, grid.params, grid.features)
        if path is None:
            return
        payload = {
            "format_version": GRID_FORMAT_VERSION,
            "dataset_id": grid.dataset_id,
            "params": grid.params.to_dict(),
            "features": list(grid.features),
            "entries": {
                f"{k.i},{k.j}": {
                    "labels": [int(x) for x in lab.labels],
                    "n_clusters": lab.n_clusters,
                    "inertia": lab.inertia,
                }
                for k, lab in grid.entries.items()
            },
            "failures": {f"{k.i},{k.j}": msg for k, msg in grid.failures.items()},
        }
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            # repr floats, not 12-digit canonical: cached inertia must round-trip exactly
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)

    def _load_from_disk(
        self, dataset: Dataset, params: ClusteringParams, features: tuple[str, ...]
    ) -> PairGrid | None:
        path = self._grid_path(dataset.id, params, features)
        if path is None or not path.exists():
            return None
        try:
            payload = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if (
            payload.get("format_version") != GRID_FORMAT_VERSION
            or payload.get("dataset_id") != dataset.id
            or payload.get("features") != list(features)
            or payload.get("params") != params.to_dict()
        ):
            return None
        entries = {}
        for raw_key, raw in payload["entries"].items():
            i, j = (int(x) for x in raw_key.split(","))
            entries[FeaturePairKey(i, j)] = ClusterLabeling(
                labels=np.array(raw["labels"], dtype=np.int64),
                n_clusters=int(raw["n_clusters"]),
                params=params,
                inertia=raw["inertia"],
            )
        failures = {
            FeaturePairKey(*(int(x) for x in raw_key.split(","))): msg
            for raw_key, msg in payload["failures"].items()
        }
        return PairGrid(
            dataset_id=dataset.id,
            params=params,
            features=features,
            entries=entries,
            failures=failures,
            complete=True,
        )
