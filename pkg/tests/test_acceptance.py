"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines.
"""

import json
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from cif.cli import main as cli_main
from cif.clustering import ClusteringParams, dbscan_2d, kmeans_2d_with_history, kmeans_2d
from cif.dataset import load_csv
from cif.importance import (
    fit_ridge,
    linear_shapley,
    mc_shapley_oracle,
    predictor_matrix,
    rank_features,
)
from cif.jsonio import canonical_dumps
from cif.pairgrid import FeaturePairKey, GridCache, enumerate_pairs
from cif.report import build_analysis_report
from cif.sampledata import default_dataset_path
from cif.seriation import hierarchical_cluster, optimal_leaf_order, ordering_cost
from cif.service import SessionState, create_app
from cif.similarity import jaccard, resolve_point

from conftest import make_dataset, random_blobs
from oracles import (
    dbscan_partition,
    expected_jaccard_random_cluster,
    labels_to_partition,
    min_flip_order_cost,
    naive_jaccard,
)

GOLDEN = Path(__file__).parent / "golden"


@contextmanager
def criterion(number: int, name: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE CRITERION {number} ({name}): FAIL")
        raise
    print(f"ACCEPTANCE CRITERION {number} ({name}): PASS")


def test_criterion_1_jaccard_axioms():
    with criterion(1, "Jaccard axioms vs naive oracle"):
        rng = np.random.default_rng(1)
        started = time.perf_counter()
        for _ in range(1000):
            universe = int(rng.integers(1, 501))
            a = frozenset(int(x) for x in rng.integers(0, universe, size=rng.integers(0, 60)))
            b = frozenset(int(x) for x in rng.integers(0, universe, size=rng.integers(0, 60)))
            if not a and not b:
                continue
            value = jaccard(a, b)
            assert value == naive_jaccard(a, b)  # exact
            assert value == jaccard(b, a)
            assert 0.0 <= value <= 1.0
            if a or b:
                assert jaccard(a or b, a or b) == 1.0
            if a and b and not (a & b):
                assert value == 0.0
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0, f"took {elapsed:.2f}s"


def test_criterion_2_kmeans():
    with criterion(2, "K-Means monotonicity, determinism, blob recovery"):
        rng = np.random.default_rng(2)
        for trial in range(100):
            n = int(rng.integers(5, 80))
            points = rng.normal(size=(n, 2)) * rng.uniform(0.5, 4.0)
            k = int(rng.integers(1, min(6, n) + 1))
            params = ClusteringParams(algorithm="kmeans", k=k, seed=trial)
            _, history = kmeans_2d_with_history(points, params)
            assert all(a >= b - 1e-9 for a, b in zip(history, history[1:]))

        # bit-identical labels across 5 repeated runs
        points = rng.normal(size=(120, 2))
        params = ClusteringParams(algorithm="kmeans", k=5, seed=42)
        runs = [kmeans_2d(points, params) for _ in range(5)]
        for run in runs[1:]:
            assert np.array_equal(run.labels, runs[0].labels)
            assert run.inertia == runs[0].inertia

        # bit-identical grid output across parallelism 1 and 8
        cols = {f"f{i}": rng.normal(size=40).round(8).tolist() for i in range(6)}
        ds = make_dataset(cols)
        serial = GridCache().compute_grid(ds, params, parallelism=1)
        threaded = GridCache().compute_grid(ds, params, parallelism=8)
        assert serial.entries.keys() == threaded.entries.keys()
        for key in serial.entries:
            assert np.array_equal(serial.entries[key].labels, threaded.entries[key].labels)

        # 3 well-separated Gaussian blobs: 60 points, sigma 0.1, centers >= 10 sigma apart
        blob_rng = np.random.default_rng(7)
        points, truth = random_blobs(
            blob_rng, centers=[(0, 0), (2, 0), (0, 2)], n_per=20, sigma=0.1
        )
        got = kmeans_2d(points, ClusteringParams(algorithm="kmeans", k=3, seed=42))
        for label in range(3):
            true_set = set(np.flatnonzero(truth == label).tolist())
            best = max(
                naive_jaccard(true_set, set(np.flatnonzero(got.labels == c).tolist()))
                for c in range(got.n_clusters)
            )
            assert best >= 0.95


def test_criterion_3_dbscan_oracle():
    with criterion(3, "DBSCAN exact partition equality vs brute-force oracle"):
        rng = np.random.default_rng(3)
        for trial in range(100):
            n = int(rng.integers(5, 201))
            scale = rng.uniform(0.5, 3.0)
            points = rng.normal(size=(n, 2)) * scale
            eps = float(rng.uniform(0.05, 1.2) * scale)
            min_samples = int(rng.integers(1, 10))
            params = ClusteringParams(algorithm="dbscan", eps=eps, min_samples=min_samples)
            got_clusters, got_noise = labels_to_partition(dbscan_2d(points, params).labels)
            want_clusters, want_noise = dbscan_partition(points, eps, min_samples)
            assert got_clusters == set(want_clusters), f"trial {trial}"
            assert got_noise == want_noise, f"trial {trial}"


def test_criterion_4_olo_optimality():
    with criterion(4, "optimal leaf ordering matches brute force"):
        rng = np.random.default_rng(4)
        for trial in range(50):
            d = int(rng.integers(3, 9))
            raw = rng.uniform(0.0, 5.0, size=(d, d))
            dmat = (raw + raw.T) / 2.0
            np.fill_diagonal(dmat, 0.0)
            tree = hierarchical_cluster(dmat)
            ordering = optimal_leaf_order(tree, dmat)
            brute = min_flip_order_cost(tree, dmat)
            assert abs(ordering.cost - brute) <= 1e-9, f"trial {trial}"
            as_built = ordering_cost(tree.as_built_order(), dmat)
            assert ordering.cost <= as_built + 1e-9


def test_criterion_5_pair_enumeration():
    with criterion(5, "pair enumeration counts and order"):
        rng = np.random.default_rng(5)
        for d in range(2, 31):
            ds = make_dataset({f"f{i}": rng.normal(size=4).round(6).tolist() for i in range(d)})
            pairs = enumerate_pairs(ds)
            assert len(pairs) == d * (d - 1) // 2
            assert pairs == sorted(pairs)
            assert all(0 <= k.i < k.j < d for k in pairs)


def test_criterion_6_end_to_end_scenario(tmp_path, parkinsons):
    with criterion(6, "end-to-end sample scenario"):
        assert parkinsons.n_rows == 195
        assert parkinsons.column("name").kind == "categorical"

        params = ClusteringParams(algorithm="kmeans", k=5, seed=42)
        cache = GridCache()
        started = time.perf_counter()
        report = build_analysis_report(
            parkinsons,
            params,
            "MDVP:Flo(Hz)",
            "MDVP:Fo(Hz)",
            row_index=10,
            aggregation="max",
            ordering_method="olo",
            exclude=("status",),
            cache=cache,
            parallelism=8,
        )
        elapsed = time.perf_counter() - started
        assert elapsed < 10.0, f"pipeline took {elapsed:.1f}s"

        grid = cache.compute_grid(parkinsons, params, exclude=("status",), parallelism=8)
        assert len(grid.entries) == 231 and not grid.failures

        # byte-identical across runs (and against the frozen golden report)
        fresh = build_analysis_report(
            parkinsons, params, "MDVP:Flo(Hz)", "MDVP:Fo(Hz)", row_index=10,
            aggregation="max", ordering_method="olo", exclude=("status",),
            cache=GridCache(), parallelism=8,
        )
        assert canonical_dumps(fresh) == canonical_dumps(report)
        assert canonical_dumps(report) == (GOLDEN / "analysis_report.json").read_text()

        # source pair's own matrix cell under MAX aggregation is exactly 1
        features = report["matrix"]["features"]
        fx, fy = features.index("MDVP:Fo(Hz)"), features.index("MDVP:Flo(Hz)")
        assert report["matrix"]["cells"][fx][fy] == 1.0

        # the selected cohort overlaps the clinical label far beyond chance:
        # its Jaccard with the status=1 row set must exceed the analytic
        # expectation for a random cluster of the same size (hypergeometric)
        key = FeaturePairKey(min(fx, fy), max(fx, fy))
        source = resolve_point(grid, key, 10)
        status = parkinsons.column("status").values
        positives = frozenset(np.flatnonzero(status == 1).tolist())
        observed = jaccard(source.members, positives)
        expected = expected_jaccard_random_cluster(195, len(positives), len(source.members))
        assert observed > expected, f"J={observed:.4f} vs E[J]={expected:.4f}"


def test_criterion_7_importance():
    with criterion(7, "importance: local accuracy, ranking stability, MC agreement"):
        # local accuracy at 1e-10 on every row of the bundled dataset
        sample = load_csv(default_dataset_path().read_bytes())
        model = fit_ridge(sample, "status", lam=1.0)
        phi = linear_shapley(model, sample)
        matrix, _ = predictor_matrix(sample, "status")
        centered = model.predict(matrix) - model.predict(matrix).mean()
        assert np.max(np.abs(phi.sum(axis=1) - centered)) < 1e-10

        # y = 3 z1 + 0.5 z2 + eps: x1 ranks before x2 across 20 seeds
        for seed in range(20):
            rng = np.random.default_rng(seed)
            n = 60
            z1, z2, z3 = (rng.normal(size=n) for _ in range(3))
            z1, z2, z3 = ((v - v.mean()) / v.std() for v in (z1, z2, z3))
            y = 3.0 * z1 + 0.5 * z2 + 0.05 * rng.normal(size=n)
            ds = make_dataset({
                "x1": z1.round(12).tolist(),
                "x2": z2.round(12).tolist(),
                "x3": z3.round(12).tolist(),
                "y": y.round(12).tolist(),
            })
            m = fit_ridge(ds, "y", lam=1.0)
            ranking = rank_features(linear_shapley(m, ds), m.predictors, "y")
            ranks = dict(zip(ranking.features, ranking.ranks))
            assert ranks["x1"] < ranks["x2"]

        # MC oracle within 0.01 of the closed form at 20,000 samples, d <= 5
        rng = np.random.default_rng(77)
        n, d = 30, 5
        cols = {}
        for j in range(d):
            v = rng.normal(size=n)
            cols[f"x{j}"] = ((v - v.mean()) / v.std()).round(12).tolist()
        w = rng.uniform(-2, 2, size=d)
        y = sum(w[j] * np.array(cols[f"x{j}"]) for j in range(d))
        cols["y"] = y.round(12).tolist()
        ds = make_dataset(cols)
        m = fit_ridge(ds, "y", lam=1e-6)
        closed = np.abs(linear_shapley(m, ds)).mean(axis=0)
        pred_matrix, _ = predictor_matrix(ds, "y")
        mc = mc_shapley_oracle(m, pred_matrix, samples=20000, seed=0)
        assert np.max(np.abs(mc - closed)) < 0.01


def test_criterion_8_service_cli_parity(tmp_path, parkinsons, parkinsons_bytes):
    with criterion(8, "service/CLI parity and idempotence"):
        out = tmp_path / "report.json"
        code = cli_main([
            "analyze",
            "--input", str(default_dataset_path()),
            "--algorithm", "kmeans", "--k", "5", "--seed", "42",
            "--source-pair", "MDVP:Flo(Hz),MDVP:Fo(Hz)",
            "--source-row", "10",
            "--aggregation", "max", "--ordering", "olo",
            "--exclude", "status",
            "--threads", "8",
            "--out", str(out),
        ])
        assert code == 0

        state = SessionState(parallelism=8)
        state.add_dataset(parkinsons)
        client = TestClient(create_app(state))
        body = {
            "algorithm": "kmeans",
            "params": {"k": 5, "seed": 42},
            "source": {
                "feature_x": "MDVP:Flo(Hz)",
                "feature_y": "MDVP:Fo(Hz)",
                "row_index": 10,
            },
            "aggregation": "max",
            "ordering": "olo",
            "exclude": ["status"],
        }
        first = client.post(f"/api/datasets/{parkinsons.id}/similarity", json=body)
        assert first.status_code == 200
        assert first.content == out.read_bytes()

        second = client.post(f"/api/datasets/{parkinsons.id}/similarity", json=body)
        assert second.content == first.content
