"""Independent oracles shared by the unit and acceptance suites.

Everything here recomputes expectations from first principles (exact
rational arithmetic, exhaustive enumeration, brute-force pairwise
counting) without calling into the implementation's internals.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def gini_fraction(labels) -> Fraction:
    n = len(labels)
    pos = int(sum(labels))
    return 1 - Fraction(pos, n) ** 2 - Fraction(n - pos, n) ** 2


def enumerate_axis_splits(x, y):
    """All (feature, threshold, weighted child Gini) over midpoint
    thresholds, in exact rational arithmetic."""
    x = np.asarray(x, dtype=float)
    results = []
    for feature in range(x.shape[1]):
        values = np.unique(x[:, feature])
        for a, b in zip(values, values[1:]):
            threshold = (a + b) / 2.0
            left = [y[i] for i in range(len(y)) if x[i, feature] <= threshold]
            right = [y[i] for i in range(len(y)) if x[i, feature] > threshold]
            weighted = (
                Fraction(len(left), len(y)) * gini_fraction(left)
                + Fraction(len(right), len(y)) * gini_fraction(right)
            )
            results.append((feature, threshold, weighted))
    return results


def walk_nodes_with_samples(tree, x: np.ndarray, initial_idx: np.ndarray | None = None):
    """Yield (node, sample index array) by routing training rows through
    the stored structure. ``initial_idx`` supports bootstrap samples
    (duplicate row indices)."""
    if initial_idx is None:
        initial_idx = np.arange(x.shape[0])
    stack = [(0, np.asarray(initial_idx))]
    while stack:
        node, idx = stack.pop()
        yield node, idx
        feature = int(tree.feature[node])
        if feature >= 0:
            mask = x[idx, feature] <= tree.threshold[node]
            stack.append((int(tree.left[node]), idx[mask]))
            stack.append((int(tree.right[node]), idx[~mask]))


def assert_strict_gini_decrease(tree, x: np.ndarray, y: np.ndarray,
                                initial_idx: np.ndarray | None = None) -> int:
    """Exact-rational check of the split invariant on every internal
    node; returns the number of internal nodes checked."""
    checked = 0
    for node, idx in walk_nodes_with_samples(tree, x, initial_idx):
        if tree.feature[node] < 0:
            continue
        labels = [int(y[i]) for i in idx]
        parent = gini_fraction(labels)
        mask = x[idx, int(tree.feature[node])] <= tree.threshold[node]
        left = [int(y[i]) for i in idx[mask]]
        right = [int(y[i]) for i in idx[~mask]]
        assert left and right
        weighted = (
            Fraction(len(left), len(labels)) * gini_fraction(left)
            + Fraction(len(right), len(labels)) * gini_fraction(right)
        )
        assert weighted < parent
        checked += 1
    return checked


def pair_count_auc(scores, labels) -> float:
    """Exhaustive pair counting: wins + half-ties over every
    (positive, negative) pair."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    pos = scores[labels == 1]
    neg = scores[labels != 1]
    wins = int((pos[:, None] > neg[None, :]).sum())
    ties = int((pos[:, None] == neg[None, :]).sum())
    return (wins + 0.5 * ties) / (len(pos) * len(neg))


def brute_force_knn_scores(train_x, train_y, queries, k) -> np.ndarray:
    """Per query, Python-sorted (distance, index) pairs; ties go to the
    lower training-row index."""
    out = []
    for q in queries:
        dist = [(float(((q - train_x[i]) ** 2).sum()), i) for i in range(len(train_x))]
        dist.sort()
        chosen = [train_y[i] for _, i in dist[:k]]
        out.append(sum(chosen) / k)
    return np.array(out)
