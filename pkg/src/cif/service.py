"""HTTP API exposing the full workflow: upload, explore, cluster, compare.

Every response body is canonical JSON (sorted keys, 12 significant digits),
so identical requests return byte-identical payloads. The cluster similarity
endpoint delegates to the same report builder the CLI uses.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, File, Query, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from .clustering import KMEANS, ClusteringError, ClusteringParams
from .dataset import (
    Dataset,
    DatasetError,
    UnknownFeatureError,
    column_minmax,
    histogram,
    load_csv,
)
from .importance import ImportanceError, ImportanceRanking, compute_importance
from .jsonio import canonical_dumps
from .pairgrid import FeaturePairKey, GridCache, GridError, numeric_features
from .report import SCHEMA_VERSION, build_analysis_report
from .seriation import SeriationError
from .similarity import NoiseSelectionError, SimilarityError

_CLIENT_ERRORS = (
    DatasetError,
    ClusteringError,
    GridError,
    SimilarityError,
    SeriationError,
    ImportanceError,
)

_PARAM_FIELDS = {
    "k": int,
    "eps": float,
    "min_samples": int,
    "seed": int,
    "max_iter": int,
    "tol": float,
}


class UnknownDatasetError(LookupError):
    pass


class SessionState:
    """Registry of loaded datasets plus the shared result caches."""

    def __init__(self, cache_dir: str | Path | None = None, parallelism: int = 8):
        self.datasets: dict[str, Dataset] = {}
        self.grid_cache = GridCache(cache_dir)
        self.importance_cache: dict[tuple, ImportanceRanking] = {}
        self.parallelism = parallelism
        self._lock = threading.Lock()

    def add_dataset(self, dataset: Dataset) -> None:
        with self._lock:
            self.datasets[dataset.id] = dataset

    def get_dataset(self, dataset_id: str) -> Dataset:
        dataset = self.datasets.get(dataset_id)
        if dataset is None:
            raise UnknownDatasetError(f"unknown dataset {dataset_id!r}")
        return dataset


def bootstrap_state(
    cache_dir: str | Path | None,
    default_dataset: str | Path,
    parallelism: int = 8,
) -> SessionState:
    """Session state with the default dataset preloaded."""
    state = SessionState(cache_dir=cache_dir, parallelism=parallelism)
    state.add_dataset(load_csv(Path(default_dataset).read_bytes()))
    return state


def parse_params(body: dict) -> ClusteringParams:
    algorithm = body.get("algorithm")
    if not isinstance(algorithm, str):
        raise ClusteringError("request must name an algorithm ('kmeans' or 'dbscan')")
    raw = body.get("params") or {}
    if not isinstance(raw, dict):
        raise ClusteringError("params must be an object")
    kwargs = {}
    for key, value in raw.items():
        caster = _PARAM_FIELDS.get(key)
        if caster is None:
            raise ClusteringError(f"unknown clustering parameter {key!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ClusteringError(f"parameter {key!r} must be a number")
        if caster is int and int(value) != value:
            raise ClusteringError(f"parameter {key!r} must be an integer")
        kwargs[key] = caster(value)
    return ClusteringParams(algorithm=algorithm, **kwargs)


def _stats_payload(column) -> dict | None:
    if column.stats is None:
        return None
    s = column.stats
    return {
        "min": s.min,
        "max": s.max,
        "mean": s.mean,
        "std": s.std,
        "distinct_count": s.distinct_count,
    }


def dataset_summary(dataset: Dataset) -> dict:
    return {
        "dataset_id": dataset.id,
        "n_rows": dataset.n_rows,
        "dropped_rows": list(dataset.dropped_rows),
        "features": [
            {"name": c.name, "kind": c.kind, "stats": _stats_payload(c)}
            for c in dataset.columns
        ],
    }


def create_app(state: SessionState | None = None, cors_origins: tuple[str, ...] = ("*",)) -> FastAPI:
    if state is None:
        state = SessionState()
    app = FastAPI(title="cif service")
    app.state.session = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def respond(payload: dict, status: int = 200) -> Response:
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        return Response(
            content=canonical_dumps(payload),
            status_code=status,
            media_type="application/json",
        )

    def fail(status: int, message: str) -> Response:
        return respond({"error": message}, status=status)

    def map_error(exc: Exception) -> Response:
        if isinstance(exc, UnknownDatasetError):
            return fail(404, str(exc))
        if isinstance(exc, UnknownFeatureError):
            return fail(404, str(exc))
        if isinstance(exc, NoiseSelectionError):
            return fail(422, str(exc))
        if isinstance(exc, _CLIENT_ERRORS):
            return fail(400, str(exc))
        raise exc

    @app.post("/api/datasets")
    async def upload_dataset(file: UploadFile = File(None)):
        if file is None:
            return fail(400, "multipart upload must include a 'file' field")
        data = await file.read()
        try:
            dataset = load_csv(data)
        except DatasetError as exc:
            return fail(400, str(exc))
        state.add_dataset(dataset)
        return respond(dataset_summary(dataset))

    @app.get("/api/datasets")
    def list_datasets():
        summaries = [dataset_summary(d) for d in state.datasets.values()]
        summaries.sort(key=lambda s: s["dataset_id"])
        return respond({"datasets": summaries})

    @app.get("/api/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        try:
            dataset = state.get_dataset(dataset_id)
        except UnknownDatasetError as exc:
            return map_error(exc)
        return respond(dataset_summary(dataset))

    @app.get("/api/datasets/{dataset_id}/rows")
    def get_rows(dataset_id: str):
        try:
            dataset = state.get_dataset(dataset_id)
        except UnknownDatasetError as exc:
            return map_error(exc)
        columns = [
            {
                "name": c.name,
                "kind": c.kind,
                "values": list(c.values) if c.kind == "categorical" else c.values,
            }
            for c in dataset.columns
        ]
        return respond({"n_rows": dataset.n_rows, "columns": columns})

    @app.get("/api/datasets/{dataset_id}/histogram")
    def get_histogram(dataset_id: str, feature: str, bins: int = 10):
        try:
            dataset = state.get_dataset(dataset_id)
            hist = histogram(dataset, feature, bins)
        except Exception as exc:
            return map_error(exc)
        return respond({
            "feature": hist.feature,
            "bin_count": hist.bin_count,
            "edges": hist.edges,
            "counts": [int(c) for c in hist.counts],
        })

    @app.get("/api/datasets/{dataset_id}/normalized")
    def get_normalized(dataset_id: str, feature: str):
        try:
            dataset = state.get_dataset(dataset_id)
            values = column_minmax(dataset, feature)
        except Exception as exc:
            return map_error(exc)
        return respond({"feature": feature, "values": values})

    @app.post("/api/datasets/{dataset_id}/cluster")
    async def cluster_pair(dataset_id: str, request: Request):
        try:
            dataset = state.get_dataset(dataset_id)
            body = await request.json()
            params = parse_params(body)
            feature_x, feature_y = body.get("feature_x"), body.get("feature_y")
            if not feature_x or not feature_y:
                raise SimilarityError("request must name feature_x and feature_y")
            for name in (feature_x, feature_y):
                dataset.numeric_column(name)
            if feature_x == feature_y:
                raise SimilarityError("feature_x and feature_y must differ")
            features = numeric_features(dataset)
            a, b = features.index(feature_x), features.index(feature_y)
            key = FeaturePairKey(min(a, b), max(a, b))
            labeling = state.grid_cache.compute_pair(dataset, key, params, features)
        except Exception as exc:
            return map_error(exc)
        payload = {
            "labels": [int(x) for x in labeling.labels],
            "n_clusters": labeling.n_clusters,
        }
        if params.algorithm == KMEANS:
            payload["inertia"] = labeling.inertia
        return respond(payload)

    @app.post("/api/datasets/{dataset_id}/similarity")
    async def similarity_analysis(dataset_id: str, request: Request):
        try:
            dataset = state.get_dataset(dataset_id)
            body = await request.json()
            params = parse_params(body)
            source = body.get("source") or {}
            if not isinstance(source, dict) or not source.get("feature_x") or not source.get("feature_y"):
                raise SimilarityError("source must name feature_x and feature_y")
            exclude = body.get("exclude") or []
            if not isinstance(exclude, list):
                raise SimilarityError("exclude must be a list of column names")
            for field in ("row_index", "cluster_id"):
                value = source.get(field)
                if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                    raise SimilarityError(f"{field} must be an integer")
            report = build_analysis_report(
                dataset,
                params,
                source["feature_x"],
                source["feature_y"],
                row_index=source.get("row_index"),
                cluster_id=source.get("cluster_id"),
                aggregation=body.get("aggregation", "max"),
                ordering_method=body.get("ordering", "original"),
                exclude=tuple(exclude),
                cache=state.grid_cache,
                parallelism=state.parallelism,
            )
        except Exception as exc:
            return map_error(exc)
        return Response(content=canonical_dumps(report), media_type="application/json")

    @app.get("/api/datasets/{dataset_id}/importance")
    def get_importance(dataset_id: str, target: str, lam: float = Query(1.0, alias="lambda")):
        try:
            dataset = state.get_dataset(dataset_id)
            cache_key = (dataset_id, target, repr(lam))
            ranking = state.importance_cache.get(cache_key)
            if ranking is None:
                ranking = compute_importance(dataset, target, lam)
                state.importance_cache[cache_key] = ranking
        except Exception as exc:
            return map_error(exc)
        return respond({
            "target": ranking.target,
            "features": list(ranking.features),
            "scores": ranking.scores,
            "ranks": list(ranking.ranks),
        })

    return app
