"""Similarity-matrix reordering: average-linkage tree + optimal leaf ordering.

Feature rows of the similarity matrix are treated as profiles; features whose
profiles are close get merged early, and the leaf order is then chosen, among
all orders reachable by flipping subtrees, to minimize the summed distance
between adjacent leaves (the classic dendrogram seriation dynamic program).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .similarity import SimilarityMatrix

ORIGINAL = "original"
OLO = "olo"
ORDERINGS = (ORIGINAL, OLO)


class SeriationError(ValueError):
    """Raised for malformed seriation inputs."""


@dataclass(frozen=True)
class LinkageTree:
    n_leaves: int
    merges: tuple  # ((node_a, node_b, height), ...); merge t creates node n_leaves + t

    def children(self, node: int) -> tuple[int, int] | None:
        if node < self.n_leaves:
            return None
        a, b, _ = self.merges[node - self.n_leaves]
        return a, b

    def leaves(self, node: int) -> tuple[int, ...]:
        """Leaf ids under ``node`` in as-built order (node_a side first)."""
        kids = self.children(node)
        if kids is None:
            return (node,)
        return self.leaves(kids[0]) + self.leaves(kids[1])

    @property
    def root(self) -> int:
        return self.n_leaves + len(self.merges) - 1

    def as_built_order(self) -> tuple[int, ...]:
        return self.leaves(self.root)


@dataclass(frozen=True)
class Ordering:
    permutation: tuple[int, ...]
    method: str
    cost: float | None = None  # sum of adjacent-leaf distances, OLO only


def original_ordering(d: int) -> Ordering:
    return Ordering(permutation=tuple(range(d)), method=ORIGINAL, cost=None)


def ordering_cost(permutation, distances: np.ndarray) -> float:
    """Sum of distances between adjacent entries of a permutation."""
    perm = list(permutation)
    return float(sum(distances[perm[t], perm[t + 1]] for t in range(len(perm) - 1)))


def feature_distances(matrix: SimilarityMatrix) -> np.ndarray:
    """Euclidean distances between feature profiles (matrix rows).

    A feature's profile is its row with the diagonal imputed as 1.0 (a feature
    is maximally similar to itself) and undefined cells imputed as 0.0.
    """
    d = len(matrix.features)
    if d < 2:
        raise SeriationError(f"need at least 2 features, have {d}")
    profiles = matrix.cells.copy()
    np.fill_diagonal(profiles, 1.0)
    profiles[np.isnan(profiles)] = 0.0
    distances = np.zeros((d, d))
    for x in range(d):
        for y in range(x + 1, d):
            dist = float(np.sqrt(((profiles[x] - profiles[y]) ** 2).sum()))
            distances[x, y] = dist
            distances[y, x] = dist
    return distances


def _check_distances(distances) -> np.ndarray:
    dmat = np.asarray(distances, dtype=np.float64)
    if dmat.ndim != 2 or dmat.shape[0] != dmat.shape[1]:
        raise SeriationError(f"distance matrix must be square, got shape {dmat.shape}")
    if dmat.shape[0] < 2:
        raise SeriationError("need at least 2 items to cluster")
    if not np.all(np.isfinite(dmat)):
        raise SeriationError("distance matrix must be finite")
    if np.any(dmat < 0):
        raise SeriationError("distances must be nonnegative")
    if np.any(np.diag(dmat) != 0):
        raise SeriationError("distance matrix must have a zero diagonal")
    if not np.array_equal(dmat, dmat.T):
        raise SeriationError("distance matrix must be symmetric")
    return dmat


def hierarchical_cluster(distances) -> LinkageTree:
    """Agglomerative clustering with average linkage (UPGMA).

    Ties between candidate merges break toward the smallest (node_a, node_b)
    id pair, so the tree is reproducible.
    """
    dmat = _check_distances(distances)
    d = dmat.shape[0]
    active = list(range(d))
    sizes = {i: 1 for i in range(d)}
    dist = {(a, b): float(dmat[a, b]) for a in range(d) for b in range(a + 1, d)}
    merges = []
    next_id = d
    while len(active) > 1:
        best = None
        for ia in range(len(active)):
            for ib in range(ia + 1, len(active)):
                a, b = active[ia], active[ib]
                key = (dist[(a, b)], a, b)
                if best is None or key < best:
                    best = key
        height, a, b = best
        merges.append((a, b, height))
        new = next_id
        next_id += 1
        for other in active:
            if other in (a, b):
                continue
            da = dist[(min(a, other), max(a, other))]
            db = dist[(min(b, other), max(b, other))]
            dist[(other, new)] = (sizes[a] * da + sizes[b] * db) / (sizes[a] + sizes[b])
        sizes[new] = sizes[a] + sizes[b]
        active = [x for x in active if x not in (a, b)] + [new]
    return LinkageTree(n_leaves=d, merges=tuple(merges))


def optimal_leaf_order(tree: LinkageTree, distances) -> Ordering:
    """Minimum adjacent-distance leaf order among all subtree-flip orders.

    Dynamic program over (subtree, leftmost leaf, rightmost leaf); ties break
    toward the lexicographically smallest permutation.
    """
    dmat = _check_distances(distances)
    d = tree.n_leaves
    if dmat.shape[0] != d:
        raise SeriationError(
            f"distance matrix covers {dmat.shape[0]} items but the tree has {d} leaves"
        )

    # cost[node][(u, w)]: minimum cost of an order of node's leaves that
    # starts at u and ends at w; symmetric because reversal preserves cost.
    cost: dict[int, dict[tuple[int, int], float]] = {
        leaf: {(leaf, leaf): 0.0} for leaf in range(d)
    }
    for t, (a, b, _) in enumerate(tree.merges):
        node = d + t
        ca, cb = cost[a], cost[b]
        ends_a = sorted({u for u, _ in ca})
        ends_b = sorted({k for k, _ in cb})
        merged: dict[tuple[int, int], float] = {}
        for u in ends_a:
            # bridge[k]: cheapest way to run from u through A and cross to k in B
            bridge = {}
            for k in ends_b:
                bridge[k] = min(ca[(u, m)] + dmat[m, k] for m in ends_a if (u, m) in ca)
            for w in ends_b:
                value = min(bridge[k] + cb[(k, w)] for k in ends_b if (k, w) in cb)
                merged[(u, w)] = value
                merged[(w, u)] = value
        cost[node] = merged

    root = tree.root
    best_cost = min(cost[root].values())

    seq_memo: dict[tuple[int, int, int], tuple[int, ...]] = {}

    def reconstruct(node: int, u: int, w: int) -> tuple[int, ...]:
        """Lexicographically smallest optimal order of node's leaves from u to w.

        Recomputes the candidate minimum locally rather than comparing against
        the forward table: a mirrored orientation re-sums the same terms in a
        different association order, so exact equality cannot be relied on.
        """
        key = (node, u, w)
        if key in seq_memo:
            return seq_memo[key]
        kids = tree.children(node)
        if kids is None:
            seq_memo[key] = (u,)
            return (u,)
        a, b = kids
        first, second = (a, b) if u in set(tree.leaves(a)) else (b, a)
        cf, cs = cost[first], cost[second]
        ends_first = sorted({m for (uu, m) in cf if uu == u})
        starts_second = sorted({k for (k, ww) in cs if ww == w})
        candidates = {
            (m, k): cf[(u, m)] + dmat[m, k] + cs[(k, w)]
            for m in ends_first
            for k in starts_second
        }
        best_value = min(candidates.values())
        best_seq = None
        for (m, k), value in candidates.items():
            if value == best_value:
                seq = reconstruct(first, u, m) + reconstruct(second, k, w)
                if best_seq is None or seq < best_seq:
                    best_seq = seq
        seq_memo[key] = best_seq
        return best_seq

    best_perm = None
    for (u, w), value in sorted(cost[root].items()):
        if value == best_cost:
            seq = reconstruct(root, u, w)
            if best_perm is None or seq < best_perm:
                best_perm = seq
    return Ordering(permutation=best_perm, method=OLO, cost=best_cost)


def apply_order(matrix: SimilarityMatrix, ordering: Ordering) -> SimilarityMatrix:
    """Permute matrix rows and columns identically by an ordering."""
    d = len(matrix.features)
    perm = list(ordering.permutation)
    if sorted(perm) != list(range(d)):
        raise SeriationError(
            f"ordering over {len(perm)} items is not a permutation of {d} features"
        )
    idx = np.array(perm)
    return SimilarityMatrix(
        features=tuple(matrix.features[p] for p in perm),
        cells=matrix.cells[np.ix_(idx, idx)],
        aggregation=matrix.aggregation,
        ordering=tuple(range(d)),
    )
