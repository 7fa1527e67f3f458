import numpy as np
import pytest

from cif.pairgrid import FeaturePairKey
from cif.similarity import SimilarityMatrix
from cif.seriation import (
    OLO,
    ORIGINAL,
    LinkageTree,
    Ordering,
    SeriationError,
    apply_order,
    feature_distances,
    hierarchical_cluster,
    optimal_leaf_order,
    ordering_cost,
    original_ordering,
)

from oracles import min_flip_order_cost


def sim_matrix(cells, features=None, aggregation="max"):
    cells = np.array(cells, dtype=float)
    d = cells.shape[0]
    features = features or tuple(f"f{i}" for i in range(d))
    return SimilarityMatrix(
        features=tuple(features),
        cells=cells,
        aggregation=aggregation,
        ordering=tuple(range(d)),
    )


def random_distances(rng, d):
    raw = rng.uniform(0.0, 4.0, size=(d, d))
    dmat = (raw + raw.T) / 2.0
    np.fill_diagonal(dmat, 0.0)
    return dmat


class TestFeatureDistances:
    def test_identical_profiles_distance_zero(self):
        nan = np.nan
        # with the diagonal imputed as 1.0, rows 0 and 1 both become (1, 1, 0.2)
        cells = [[nan, 1.0, 0.2], [1.0, nan, 0.2], [0.2, 0.2, nan]]
        dmat = feature_distances(sim_matrix(cells))
        assert dmat[0, 1] == 0.0

    def test_symmetric_zero_diagonal(self):
        rng = np.random.default_rng(0)
        raw = rng.uniform(size=(5, 5))
        cells = (raw + raw.T) / 2
        np.fill_diagonal(cells, np.nan)
        dmat = feature_distances(sim_matrix(cells))
        assert np.array_equal(dmat, dmat.T)
        assert np.all(np.diag(dmat) == 0.0)

    def test_hand_computed(self):
        nan = np.nan
        cells = [[nan, 0.8, 0.0], [0.8, nan, 0.4], [0.0, 0.4, nan]]
        # profiles with diagonal=1, nan->0:
        #   p0 = (1.0, 0.8, 0.0), p1 = (0.8, 1.0, 0.4), p2 = (0.0, 0.4, 1.0)
        dmat = feature_distances(sim_matrix(cells))
        assert dmat[0, 1] == pytest.approx(np.sqrt(0.04 + 0.04 + 0.16))
        assert dmat[0, 2] == pytest.approx(np.sqrt(1.0 + 0.16 + 1.0))
        assert dmat[1, 2] == pytest.approx(np.sqrt(0.64 + 0.36 + 0.36))

    def test_undefined_cells_imputed_as_zero(self):
        nan = np.nan
        with_nan = [[nan, nan, 0.3], [nan, nan, 0.3], [0.3, 0.3, nan]]
        explicit = [[nan, 0.0, 0.3], [0.0, nan, 0.3], [0.3, 0.3, nan]]
        assert np.array_equal(
            feature_distances(sim_matrix(with_nan)),
            feature_distances(sim_matrix(explicit)),
        )

    def test_too_small(self):
        with pytest.raises(SeriationError):
            feature_distances(sim_matrix([[np.nan]]))


class TestHierarchicalCluster:
    def test_two_leaves(self):
        tree = hierarchical_cluster(np.array([[0.0, 3.0], [3.0, 0.0]]))
        assert tree.n_leaves == 2
        assert tree.merges == ((0, 1, 3.0),)

    def test_three_points_upgma_steps(self):
        # d(0,1)=1 merges first at height 1; then average linkage gives
        # d({0,1},2) = (4 + 5) / 2 = 4.5
        dmat = np.array([[0.0, 1.0, 4.0], [1.0, 0.0, 5.0], [4.0, 5.0, 0.0]])
        tree = hierarchical_cluster(dmat)
        assert tree.merges[0] == (0, 1, 1.0)
        assert tree.merges[1] == (2, 3, 4.5)

    def test_heights_non_decreasing(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            d = int(rng.integers(2, 12))
            tree = hierarchical_cluster(random_distances(rng, d))
            heights = [h for _, _, h in tree.merges]
            assert all(a <= b + 1e-12 for a, b in zip(heights, heights[1:]))

    def test_tie_break_smallest_pair(self):
        # all distances equal: first merge must be (0, 1), then (2, 3), then roots
        dmat = np.ones((4, 4)) - np.eye(4)
        tree = hierarchical_cluster(dmat)
        assert tree.merges[0][:2] == (0, 1)
        assert tree.merges[1][:2] == (2, 3)
        assert tree.merges[2][:2] == (4, 5)

    def test_structure_invariants(self):
        rng = np.random.default_rng(23)
        tree = hierarchical_cluster(random_distances(rng, 9))
        assert len(tree.merges) == 8
        children = [n for a, b, _ in tree.merges for n in (a, b)]
        assert len(children) == len(set(children))
        assert sorted(tree.as_built_order()) == list(range(9))

    def test_malformed(self):
        with pytest.raises(SeriationError):
            hierarchical_cluster(np.zeros((2, 3)))
        with pytest.raises(SeriationError):
            hierarchical_cluster(np.array([[0.0, 1.0], [2.0, 0.0]]))
        with pytest.raises(SeriationError):
            hierarchical_cluster(np.array([[1.0, 1.0], [1.0, 0.0]]))
        with pytest.raises(SeriationError):
            hierarchical_cluster(np.array([[0.0, -1.0], [-1.0, 0.0]]))
        with pytest.raises(SeriationError):
            hierarchical_cluster(np.array([[0.0, np.nan], [np.nan, 0.0]]))


class TestOptimalLeafOrder:
    def test_two_leaves_lexicographic(self):
        dmat = np.array([[0.0, 2.0], [2.0, 0.0]])
        ordering = optimal_leaf_order(hierarchical_cluster(dmat), dmat)
        assert ordering.permutation == (0, 1)
        assert ordering.cost == 2.0
        assert ordering.method == OLO

    def test_matches_brute_force(self):
        rng = np.random.default_rng(99)
        for d in range(3, 9):
            for _ in range(8):
                dmat = random_distances(rng, d)
                tree = hierarchical_cluster(dmat)
                ordering = optimal_leaf_order(tree, dmat)
                assert sorted(ordering.permutation) == list(range(d))
                assert ordering.cost == pytest.approx(min_flip_order_cost(tree, dmat), abs=1e-9)
                assert ordering.cost == pytest.approx(
                    ordering_cost(ordering.permutation, dmat), abs=1e-9
                )

    def test_never_worse_than_as_built(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            d = int(rng.integers(2, 12))
            dmat = random_distances(rng, d)
            tree = hierarchical_cluster(dmat)
            ordering = optimal_leaf_order(tree, dmat)
            assert ordering.cost <= ordering_cost(tree.as_built_order(), dmat) + 1e-12

    def test_reversal_preserves_cost(self):
        rng = np.random.default_rng(31)
        dmat = random_distances(rng, 6)
        tree = hierarchical_cluster(dmat)
        ordering = optimal_leaf_order(tree, dmat)
        reversed_cost = ordering_cost(tuple(reversed(ordering.permutation)), dmat)
        assert reversed_cost == pytest.approx(ordering.cost, abs=1e-12)

    def test_leaf_count_mismatch(self):
        dmat = random_distances(np.random.default_rng(1), 4)
        tree = hierarchical_cluster(dmat)
        with pytest.raises(SeriationError, match="leaves"):
            optimal_leaf_order(tree, random_distances(np.random.default_rng(2), 5))


class TestApplyOrder:
    def matrix(self):
        rng = np.random.default_rng(3)
        raw = rng.uniform(size=(4, 4))
        cells = (raw + raw.T) / 2
        np.fill_diagonal(cells, np.nan)
        return sim_matrix(cells)

    def test_identity(self):
        matrix = self.matrix()
        out = apply_order(matrix, original_ordering(4))
        assert out.features == matrix.features
        assert np.array_equal(out.cells, matrix.cells, equal_nan=True)

    def test_inverse_round_trip(self):
        matrix = self.matrix()
        perm = (2, 0, 3, 1)
        inverse = tuple(np.argsort(perm))
        once = apply_order(matrix, Ordering(perm, ORIGINAL))
        back = apply_order(once, Ordering(inverse, ORIGINAL))
        assert back.features == matrix.features
        assert np.array_equal(back.cells, matrix.cells, equal_nan=True)

    def test_preserves_symmetry_and_multiset(self):
        matrix = self.matrix()
        out = apply_order(matrix, Ordering((3, 1, 0, 2), ORIGINAL))
        assert np.array_equal(out.cells, out.cells.T, equal_nan=True)
        assert sorted(out.cells[~np.isnan(out.cells)]) == sorted(
            matrix.cells[~np.isnan(matrix.cells)]
        )

    def test_dimension_mismatch(self):
        with pytest.raises(SeriationError, match="permutation"):
            apply_order(self.matrix(), Ordering((0, 1), ORIGINAL))
