import numpy as np
import pytest
from hypothesis import given, strategies as st

from cif.clustering import (
    NOISE,
    ClusteringError,
    ClusteringParams,
    canonical_relabel,
    dbscan_2d,
    kmeans_2d,
    kmeans_2d_with_history,
)

from conftest import random_blobs
from oracles import best_kmeans_inertia, dbscan_partition, labels_to_partition, naive_jaccard


def kparams(**kw):
    return ClusteringParams(algorithm="kmeans", **kw)


def dparams(**kw):
    return ClusteringParams(algorithm="dbscan", **kw)


class TestParams:
    def test_invalid(self):
        with pytest.raises(ClusteringError):
            ClusteringParams(algorithm="ward")
        with pytest.raises(ClusteringError):
            kparams(k=0)
        with pytest.raises(ClusteringError):
            dparams(eps=0.0)
        with pytest.raises(ClusteringError):
            dparams(min_samples=0)
        with pytest.raises(ClusteringError):
            kparams(max_iter=0)
        with pytest.raises(ClusteringError):
            kparams(tol=-1.0)


class TestKMeans:
    def test_two_far_pairs(self):
        # oracle: exhaustive search over all assignments of 4 points to 2 clusters
        points = np.array([[0.0, 0.0], [0.0, 1.0], [10.0, 0.0], [10.0, 1.0]])
        best_inertia, best_partition = best_kmeans_inertia(points, 2)
        assert best_inertia == pytest.approx(1.0)
        assert best_partition == frozenset({frozenset({0, 1}), frozenset({2, 3})})

        got = kmeans_2d(points, kparams(k=2))
        clusters, noise = labels_to_partition(got.labels)
        assert not noise
        assert clusters == best_partition
        assert got.inertia == pytest.approx(1.0)
        assert got.n_clusters == 2

    def test_k_equals_n(self):
        rng = np.random.default_rng(3)
        points = rng.normal(size=(6, 2))
        got = kmeans_2d(points, kparams(k=6))
        assert got.n_clusters == 6
        assert got.inertia == 0.0
        assert sorted(got.labels) == list(range(6))

    def test_inertia_monotone(self):
        rng = np.random.default_rng(7)
        for trial in range(20):
            points = rng.normal(size=(rng.integers(5, 60), 2))
            k = int(rng.integers(1, 5))
            _, history = kmeans_2d_with_history(points, kparams(k=k, seed=trial))
            assert all(a >= b - 1e-9 for a, b in zip(history, history[1:]))
            assert history[-1] <= history[0] + 1e-12

    def test_deterministic(self):
        rng = np.random.default_rng(11)
        points = rng.normal(size=(50, 2))
        runs = [kmeans_2d(points, kparams(k=4, seed=9)) for _ in range(5)]
        for run in runs[1:]:
            assert np.array_equal(run.labels, runs[0].labels)
            assert run.inertia == runs[0].inertia

    def test_blobs_recovered(self):
        rng = np.random.default_rng(42)
        points, truth = random_blobs(rng, centers=[(0, 0), (5, 0), (0, 5)], n_per=20, sigma=0.1)
        got = kmeans_2d(points, kparams(k=3, seed=42))
        for label in range(3):
            true_set = set(np.flatnonzero(truth == label).tolist())
            best = max(
                naive_jaccard(true_set, set(np.flatnonzero(got.labels == c).tolist()))
                for c in range(got.n_clusters)
            )
            assert best >= 0.95

    def test_canonical_labels(self):
        rng = np.random.default_rng(13)
        points = rng.normal(size=(30, 2))
        got = kmeans_2d(points, kparams(k=3))
        assert got.labels[0] == 0
        seen = []
        for lab in got.labels:
            if lab not in seen:
                seen.append(lab)
        assert seen == sorted(seen)

    def test_errors(self):
        with pytest.raises(ClusteringError, match="empty"):
            kmeans_2d(np.empty((0, 2)), kparams(k=1))
        points = np.array([[1.0, 1.0], [1.0, 1.0]])
        with pytest.raises(ClusteringError, match="distinct"):
            kmeans_2d(points, kparams(k=2))
        with pytest.raises(ClusteringError, match="n x 2"):
            kmeans_2d(np.zeros((3, 3)), kparams(k=1))


class TestDbscan:
    def test_line_example(self):
        xs = [0.0, 1.0, 2.0, 10.0, 11.0, 12.0, 100.0]
        points = np.array([[x, 0.0] for x in xs])
        clusters, noise = dbscan_partition(points, eps=1.5, min_samples=2)
        assert clusters == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
        assert noise == frozenset({6})

        got = dbscan_2d(points, dparams(eps=1.5, min_samples=2))
        got_clusters, got_noise = labels_to_partition(got.labels)
        assert got_clusters == set(clusters)
        assert got_noise == noise
        assert got.n_clusters == 2
        assert got.inertia is None

    def test_all_noise(self):
        points = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
        got = dbscan_2d(points, dparams(eps=0.5, min_samples=2))
        assert got.n_clusters == 0
        assert set(got.labels) == {NOISE}

    def test_min_samples_one_no_noise(self):
        rng = np.random.default_rng(5)
        points = rng.normal(size=(40, 2))
        got = dbscan_2d(points, dparams(eps=0.3, min_samples=1))
        assert NOISE not in got.labels

    def test_against_oracle(self):
        rng = np.random.default_rng(2024)
        for _ in range(30):
            n = int(rng.integers(5, 120))
            points = rng.normal(size=(n, 2)) * rng.uniform(0.5, 3.0)
            eps = float(rng.uniform(0.1, 1.5))
            min_samples = int(rng.integers(1, 8))
            want_clusters, want_noise = dbscan_partition(points, eps, min_samples)
            got = dbscan_2d(points, dparams(eps=eps, min_samples=min_samples))
            got_clusters, got_noise = labels_to_partition(got.labels)
            assert got_clusters == set(want_clusters)
            assert got_noise == want_noise

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        points = rng.normal(size=(60, 2))
        runs = [dbscan_2d(points, dparams(eps=0.4, min_samples=3)) for _ in range(3)]
        for run in runs[1:]:
            assert np.array_equal(run.labels, runs[0].labels)

    def test_empty_input(self):
        with pytest.raises(ClusteringError, match="empty"):
            dbscan_2d(np.empty((0, 2)), dparams())


class TestCanonicalRelabel:
    @given(st.lists(st.integers(min_value=-1, max_value=6), min_size=1, max_size=40))
    def test_idempotent(self, raw):
        labels = np.array(raw)
        once = canonical_relabel(labels)
        assert np.array_equal(canonical_relabel(once), once)

    @given(st.lists(st.integers(min_value=-1, max_value=6), min_size=1, max_size=40))
    def test_preserves_partition(self, raw):
        labels = np.array(raw)
        assert labels_to_partition(labels) == labels_to_partition(canonical_relabel(labels))

    def test_first_row_rule(self):
        assert list(canonical_relabel(np.array([5, 5, 2, 5, 2]))) == [0, 0, 1, 0, 1]
        assert list(canonical_relabel(np.array([-1, 3, 1]))) == [-1, 0, 1]
