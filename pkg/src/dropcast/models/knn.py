"""Brute-force k-nearest neighbors on Euclidean distance.

Scores are the positive fraction among the k closest training rows.
Distance ties at the k-th position break toward the lower training-row
index (stable sort on squared distances). Inputs are expected
standardized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientRowsError

_CHUNK_ELEMENTS = 6_000_000  # cap on rows*train*features per distance block


@dataclass(frozen=True)
class KnnModel:
    train_x: np.ndarray
    train_y: np.ndarray
    k: int


def train_knn(x: np.ndarray, y: np.ndarray, k: int) -> KnnModel:
    if x.shape[0] < k:
        raise InsufficientRowsError(
            f"k-NN with k={k} needs at least {k} training rows, got {x.shape[0]}"
        )
    train_x = np.array(x, dtype=np.float64)
    train_y = np.array(y, dtype=np.float64)
    train_x.setflags(write=False)
    train_y.setflags(write=False)
    return KnnModel(train_x=train_x, train_y=train_y, k=k)


def knn_scores(model: KnnModel, x: np.ndarray) -> np.ndarray:
    n_query = x.shape[0]
    if n_query == 0:
        return np.zeros(0, dtype=np.float64)
    n_train, n_features = model.train_x.shape
    chunk = max(1, _CHUNK_ELEMENTS // max(1, n_train * n_features))
    out = np.empty(n_query, dtype=np.float64)
    for start in range(0, n_query, chunk):
        block = x[start : start + chunk]
        diff = block[:, None, :] - model.train_x[None, :, :]
        dist2 = (diff * diff).sum(axis=2)
        order = np.argsort(dist2, axis=1, kind="stable")[:, : model.k]
        out[start : start + chunk] = model.train_y[order].mean(axis=1)
    return out
