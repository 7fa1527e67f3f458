"""Shapley-based global feature ranking against a user-chosen target.

A ridge regression on z-scored predictors serves as the surrogate model; its
Shapley attributions have the exact closed form coefficient * (value - mean)
under feature independence, which keeps the ranking fast and deterministic.
A permutation-sampling Monte Carlo estimator is provided as an independent
check for tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, zscore


class ImportanceError(ValueError):
    """Raised for invalid importance queries."""


@dataclass(frozen=True)
class RidgeModel:
    target: str
    predictors: tuple[str, ...]
    coefficients: np.ndarray
    intercept: float
    lam: float

    def predict(self, matrix: np.ndarray) -> np.ndarray:
        return self.intercept + matrix @ self.coefficients


@dataclass(frozen=True)
class ImportanceRanking:
    target: str
    features: tuple[str, ...]
    scores: np.ndarray  # per-feature mean |Shapley value|
    ranks: tuple[int, ...]  # 1-based competition ranks, 1 = most important


def predictor_matrix(dataset: Dataset, target: str) -> tuple[np.ndarray, tuple[str, ...]]:
    """Z-scored numeric predictors (all numeric features except the target)."""
    dataset.numeric_column(target)  # validates the target exists and is numeric
    names = tuple(n for n in dataset.numeric_names() if n != target)
    if len(names) < 2:
        raise ImportanceError(f"need at least 2 predictor features, have {len(names)}")
    return np.column_stack([zscore(dataset, n) for n in names]), names


def fit_ridge(dataset: Dataset, target: str, lam: float = 1.0) -> RidgeModel:
    """Closed-form ridge fit of the target on z-scored predictors."""
    if lam < 0:
        raise ImportanceError(f"lambda must be nonnegative, got {lam}")
    matrix, names = predictor_matrix(dataset, target)
    y = dataset.numeric_column(target).values
    p = matrix.shape[1]
    gram = matrix.T @ matrix + lam * np.eye(p)
    if lam == 0.0 and np.linalg.matrix_rank(gram) < p:
        raise ImportanceError(
            "predictors are collinear, so the system is singular at lambda=0; "
            "use lambda > 0"
        )
    coefficients = np.linalg.solve(gram, matrix.T @ (y - y.mean()))
    return RidgeModel(
        target=target,
        predictors=names,
        coefficients=coefficients,
        intercept=float(y.mean()),
        lam=lam,
    )


def linear_shapley(model: RidgeModel, dataset: Dataset) -> np.ndarray:
    """Exact per-row, per-feature attributions coefficient_j * (z_ij - mean_j).

    Rows sum to the centered prediction (local accuracy).
    """
    matrix, names = predictor_matrix(dataset, model.target)
    if names != model.predictors:
        raise ImportanceError("model predictors do not match the dataset's features")
    return (matrix - matrix.mean(axis=0)) * model.coefficients


def mc_shapley_oracle(model, matrix: np.ndarray, samples: int, seed: int) -> np.ndarray:
    """Permutation-sampling estimate of per-feature mean |Shapley value|.

    Features outside the growing coalition are replaced by their column means.
    Works for any model exposing predict(matrix); deterministic given seed.
    """
    if samples < 1:
        raise ImportanceError(f"samples must be >= 1, got {samples}")
    n, p = matrix.shape
    means = matrix.mean(axis=0)
    rng = np.random.default_rng(seed)
    acc = np.zeros((n, p))
    for _ in range(samples):
        perm = rng.permutation(p)
        mixed = np.tile(means, (n, 1))
        prev = model.predict(mixed)
        for j in perm:
            mixed[:, j] = matrix[:, j]
            cur = model.predict(mixed)
            acc[:, j] += cur - prev
            prev = cur
    phi = acc / samples
    return np.abs(phi).mean(axis=0)


def rank_features(phi: np.ndarray, features: tuple[str, ...], target: str) -> ImportanceRanking:
    """Mean |attribution| per feature, ranked descending with competition ranks."""
    scores = np.abs(phi).mean(axis=0)
    ranks = tuple(1 + int(np.count_nonzero(scores > s)) for s in scores)
    return ImportanceRanking(target=target, features=features, scores=scores, ranks=ranks)


def compute_importance(dataset: Dataset, target: str, lam: float = 1.0) -> ImportanceRanking:
    """Fit the surrogate, attribute, and rank, in one call."""
    model = fit_ridge(dataset, target, lam)
    phi = linear_shapley(model, dataset)
    return rank_features(phi, model.predictors, target)
