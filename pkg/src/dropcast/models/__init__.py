"""The four binary classifiers under one train/score contract.

Every trainer is a pure function of (dataset, hyperparameters); scoring
returns one finite real per row, higher meaning more dropout-like. Tree
and forest consume raw feature values; the SVM and k-NN trainers expect
standardized inputs (callers attach the standardizer to the returned
model so scoring can standardize incoming rows itself).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from ..errors import InvalidArgumentError, WidthMismatchError
from ..ingest import BinaryDataset
from ..preprocess import Standardizer, apply_standardizer
from .forest import Forest, build_forest, forest_scores
from .knn import KnnModel, knn_scores, train_knn as _fit_knn
from .svm import LinearSvm, svm_scores, train_svm as _fit_svm
from .tree import Tree, build_tree, tree_scores


class ModelKind(enum.Enum):
    DECISION_TREE = "dt"
    RANDOM_FOREST = "rf"
    LINEAR_SVM = "svc"
    KNN = "knn"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def needs_standardization(self) -> bool:
        return self in (ModelKind.LINEAR_SVM, ModelKind.KNN)

    @property
    def accuracy_threshold(self) -> float:
        """Decision threshold for hard labels: 0 for margin scores,
        0.5 for fraction-of-positives scores."""
        return 0.0 if self is ModelKind.LINEAR_SVM else 0.5


_LABELS = {
    ModelKind.LINEAR_SVM: "SVC",
    ModelKind.DECISION_TREE: "DT",
    ModelKind.RANDOM_FOREST: "RF",
    ModelKind.KNN: "KNN",
}

GRID_MODEL_ORDER = (
    ModelKind.LINEAR_SVM,
    ModelKind.DECISION_TREE,
    ModelKind.RANDOM_FOREST,
    ModelKind.KNN,
)


@dataclass(frozen=True)
class HyperParams:
    tree_max_depth: int = 5
    forest_n_trees: int = 100
    forest_feature_rule: str = "sqrt"  # candidates per split: ceil(sqrt(p)) or "all"
    forest_min_leaf: int = 1
    forest_max_depth: int | None = None
    forest_bootstrap: bool = True  # disabling is a test-only configuration
    svm_regularization_c: float = 1.0
    svm_epochs: int = 200
    knn_k: int = 20
    seed: int = 42

    def __post_init__(self):
        counts = {
            "tree_max_depth": self.tree_max_depth,
            "forest_n_trees": self.forest_n_trees,
            "forest_min_leaf": self.forest_min_leaf,
            "svm_epochs": self.svm_epochs,
            "knn_k": self.knn_k,
        }
        for name, value in counts.items():
            if value < 1:
                raise InvalidArgumentError(f"{name} must be >= 1, got {value}")
        if self.forest_max_depth is not None and self.forest_max_depth < 1:
            raise InvalidArgumentError("forest_max_depth must be >= 1 when set")
        if self.svm_regularization_c <= 0:
            raise InvalidArgumentError("svm_regularization_c must be positive")
        if self.seed < 0:
            raise InvalidArgumentError("seed must be a non-negative integer")
        if self.forest_feature_rule not in ("sqrt", "all"):
            raise InvalidArgumentError(
                f"forest_feature_rule must be 'sqrt' or 'all', got {self.forest_feature_rule!r}"
            )


@dataclass(frozen=True)
class TrainedModel:
    kind: ModelKind
    n_features: int
    payload: Tree | Forest | LinearSvm | KnnModel
    standardizer: Standardizer | None = None


def _check_nonempty(train: BinaryDataset) -> None:
    if train.n_rows == 0:
        raise InvalidArgumentError("training set is empty")


def train_decision_tree(train: BinaryDataset, hp: HyperParams) -> TrainedModel:
    _check_nonempty(train)
    tree = build_tree(
        train.feature_matrix,
        train.labels,
        max_depth=hp.tree_max_depth,
    )
    return TrainedModel(ModelKind.DECISION_TREE, train.n_columns, tree)


def train_random_forest(
    train: BinaryDataset, hp: HyperParams, threads: int = 1
) -> TrainedModel:
    _check_nonempty(train)
    forest = build_forest(
        train.feature_matrix,
        train.labels,
        n_trees=hp.forest_n_trees,
        seed=hp.seed,
        feature_rule=hp.forest_feature_rule,
        bootstrap=hp.forest_bootstrap,
        max_depth=hp.forest_max_depth,
        min_leaf=hp.forest_min_leaf,
        threads=threads,
    )
    return TrainedModel(ModelKind.RANDOM_FOREST, train.n_columns, forest)


def train_linear_svm(train: BinaryDataset, hp: HyperParams) -> TrainedModel:
    _check_nonempty(train)
    svm = _fit_svm(
        train.feature_matrix,
        train.labels,
        c=hp.svm_regularization_c,
        epochs=hp.svm_epochs,
        seed=hp.seed,
    )
    return TrainedModel(ModelKind.LINEAR_SVM, train.n_columns, svm)


def train_knn_model(train: BinaryDataset, hp: HyperParams) -> TrainedModel:
    _check_nonempty(train)
    knn = _fit_knn(train.feature_matrix, train.labels, k=hp.knn_k)
    return TrainedModel(ModelKind.KNN, train.n_columns, knn)


_TRAINERS = {
    ModelKind.DECISION_TREE: train_decision_tree,
    ModelKind.LINEAR_SVM: train_linear_svm,
    ModelKind.KNN: train_knn_model,
}


def train_model(
    kind: ModelKind, train: BinaryDataset, hp: HyperParams, threads: int = 1
) -> TrainedModel:
    if kind is ModelKind.RANDOM_FOREST:
        return train_random_forest(train, hp, threads=threads)
    return _TRAINERS[kind](train, hp)


def with_standardizer(model: TrainedModel, standardizer: Standardizer) -> TrainedModel:
    return replace(model, standardizer=standardizer)


def score(model: TrainedModel, rows: np.ndarray) -> np.ndarray:
    """One score per row; higher means more dropout-like.

    ``rows`` are raw (unstandardized) feature values; the model applies
    its own standardizer when it carries one.
    """
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim == 1 and rows.size == 0:
        rows = rows.reshape(0, model.n_features)
    if rows.ndim != 2 or rows.shape[1] != model.n_features:
        got = rows.shape[1] if rows.ndim == 2 else None
        raise WidthMismatchError(
            f"model fitted on {model.n_features} features, rows have {got}"
        )
    if model.standardizer is not None:
        rows = apply_standardizer(model.standardizer, rows)
    if model.kind is ModelKind.DECISION_TREE:
        return tree_scores(model.payload, rows)
    if model.kind is ModelKind.RANDOM_FOREST:
        return forest_scores(model.payload, rows)
    if model.kind is ModelKind.LINEAR_SVM:
        return svm_scores(model.payload, rows)
    return knn_scores(model.payload, rows)
