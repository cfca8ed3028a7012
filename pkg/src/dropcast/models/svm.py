"""Linear SVM trained by mini-batch primal subgradient descent.

Minimizes  0.5 * ||w||^2 + C * sum_i hinge(y_i * (w . x_i + b))  with
labels mapped to {-1, +1}. The optimizer is the Pegasos schedule: the
bias is folded in as a constant input column (and therefore regularized
with the weights), lambda = 1 / (C * n), each update uses a mini-batch
of a seeded epoch shuffle with step size 1 / (lambda * t), followed by
projection onto the ball of radius 1 / sqrt(lambda). The full objective
is evaluated after every epoch and the best (w, b) seen is kept, so the
reported objective can never exceed its value at w = 0, which is C * n.

Inputs are expected standardized; the schedule is tuned for unit-scale
features.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SingleClassError
from ..rng import SeededRng

BATCH_SIZE = 64


@dataclass(frozen=True)
class LinearSvm:
    weights: np.ndarray
    bias: float
    objective: float
    epochs: int


def _objective(xb: np.ndarray, y_signed: np.ndarray, w: np.ndarray, c: float) -> float:
    margins = y_signed * (xb @ w)
    hinge = np.maximum(0.0, 1.0 - margins).sum()
    return 0.5 * float(w @ w) + c * float(hinge)


def train_svm(
    x: np.ndarray, y: np.ndarray, c: float, epochs: int, seed: int
) -> LinearSvm:
    n, p = x.shape
    if int(y.sum()) in (0, n):
        raise SingleClassError("linear SVM training needs both classes present")
    y_signed = np.where(y == 1, 1.0, -1.0)
    xb = np.concatenate([x, np.ones((n, 1))], axis=1)

    lam = 1.0 / (c * n)
    radius = 1.0 / np.sqrt(lam)
    rng = SeededRng(seed)
    w = np.zeros(p + 1, dtype=np.float64)
    best_w = w.copy()
    best_obj = _objective(xb, y_signed, w, c)

    t = 0
    for _ in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, BATCH_SIZE):
            batch = order[start : start + BATCH_SIZE]
            t += 1
            eta = 1.0 / (lam * t)
            margins = y_signed[batch] * (xb[batch] @ w)
            violators = margins < 1.0
            w *= 1.0 - eta * lam
            if violators.any():
                push = y_signed[batch][violators] @ xb[batch][violators]
                w += (eta / batch.shape[0]) * push
            norm = np.linalg.norm(w)
            if norm > radius:
                w *= radius / norm
        obj = _objective(xb, y_signed, w, c)
        if obj < best_obj:
            best_obj = obj
            best_w = w.copy()

    weights = best_w[:p].copy()
    weights.setflags(write=False)
    return LinearSvm(
        weights=weights,
        bias=float(best_w[p]),
        objective=best_obj,
        epochs=epochs,
    )


def svm_scores(model: LinearSvm, x: np.ndarray) -> np.ndarray:
    return x @ model.weights + model.bias
