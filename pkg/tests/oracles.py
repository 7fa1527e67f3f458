"""Independent brute-force oracles the implementation is checked against.

Nothing here may import from the modules it verifies; each oracle restates
the contract from first principles (exhaustive enumeration, full distance
matrices, closed-form counting).
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def best_kmeans_inertia(points, k: int):
    """Minimum inertia over every assignment of n points to k clusters.

    Returns (inertia, partition) where partition is a frozenset of frozensets
    of row indices. Exponential; only for tiny n.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    best_inertia = math.inf
    best_partition = None
    for assignment in itertools.product(range(k), repeat=n):
        groups: dict[int, list[int]] = {}
        for i, c in enumerate(assignment):
            groups.setdefault(c, []).append(i)
        inertia = 0.0
        for idx in groups.values():
            sub = pts[idx]
            inertia += ((sub - sub.mean(axis=0)) ** 2).sum()
        if inertia < best_inertia:
            best_inertia = inertia
            best_partition = frozenset(frozenset(g) for g in groups.values())
    return best_inertia, best_partition


def dbscan_partition(points, eps: float, min_samples: int):
    """Density clustering stated closed-form, no expansion queue.

    Core points: closed eps-ball (self included) holds >= min_samples points.
    Clusters: connected components of core points under pairwise eps-closeness,
    ordered by their smallest core row index. A border point joins the cluster,
    among those with a core point within eps of it, whose smallest core row
    index is lowest (that cluster's expansion runs first). Returns
    (clusters, noise): a list of frozensets plus the noise frozenset.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
    near = dist <= eps
    core = near.sum(axis=1) >= min_samples

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if core[i] and core[j] and near[i, j]:
                parent[find(i)] = find(j)

    components: dict[int, set[int]] = {}
    for i in range(n):
        if core[i]:
            components.setdefault(find(i), set()).add(i)
    clusters = sorted((set(c) for c in components.values()), key=min)

    for i in range(n):
        if core[i]:
            continue
        reachable = [ci for ci, members in enumerate(clusters) if any(near[i, j] for j in members if core[j])]
        if reachable:
            clusters[min(reachable)].add(i)

    assigned = set().union(*clusters) if clusters else set()
    noise = frozenset(range(n)) - assigned
    return [frozenset(c) for c in clusters], frozenset(noise)


def labels_to_partition(labels):
    """(clusters as a set of frozensets, noise frozenset) from a label vector."""
    labels = np.asarray(labels)
    clusters = {
        frozenset(np.flatnonzero(labels == c).tolist())
        for c in np.unique(labels)
        if c != -1
    }
    noise = frozenset(np.flatnonzero(labels == -1).tolist())
    return clusters, noise


def all_flip_orders(tree, node=None):
    """Every leaf order reachable by flipping subtrees of a linkage tree."""
    if node is None:
        node = tree.root
    kids = tree.children(node)
    if kids is None:
        return [(node,)]
    a, b = kids
    orders = []
    for left in all_flip_orders(tree, a):
        for right in all_flip_orders(tree, b):
            orders.append(left + right)
            orders.append(right + left)
    return orders


def min_flip_order_cost(tree, distances):
    """Brute-force minimum adjacent-distance cost over all flip orders."""
    dmat = np.asarray(distances, dtype=float)
    best = math.inf
    for order in all_flip_orders(tree):
        cost = sum(dmat[order[t], order[t + 1]] for t in range(len(order) - 1))
        best = min(best, cost)
    return best


def naive_jaccard(a, b) -> float:
    sa, sb = set(a), set(b)
    return len(sa & sb) / len(sa | sb)


def expected_jaccard_random_cluster(n_rows: int, reference_size: int, cluster_size: int) -> float:
    """Exact E[J(A, B)] when A is a uniformly random cluster_size-subset.

    The intersection size is hypergeometric; the expectation is the finite sum
    over its pmf, computed with exact integer binomials.
    """
    total = math.comb(n_rows, cluster_size)
    lo = max(0, cluster_size + reference_size - n_rows)
    hi = min(cluster_size, reference_size)
    expectation = 0.0
    for x in range(lo, hi + 1):
        pmf = (
            math.comb(reference_size, x)
            * math.comb(n_rows - reference_size, cluster_size - x)
            / total
        )
        expectation += pmf * x / (cluster_size + reference_size - x)
    return expectation
