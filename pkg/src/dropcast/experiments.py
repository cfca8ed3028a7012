"""Baseline runs and the four-way feature-group exclusion study.

A run evaluates (model, seed) pairs: seeded 80/20 split, train-fitted
standardization for the margin/distance models, training, scoring of
held-out rows, ROC/AUC. The ablation repeats the baseline with each
feature group excluded in turn, reusing the exact same split per seed
across all five columns so the feature subset is the only varying
factor.

Reported grids are means over seeds. Two standard deviations appear in
reports, both sample-style (n-1): across the four models within a
column, and across seeds within a cell; they answer different questions
and are labeled accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, InvalidFractionError
from .ingest import BinaryDataset, FeatureGroup, load_dataset, load_manifest, to_binary
from .metrics import RocReport, accuracy, auc, roc_curve
from .models import (
    GRID_MODEL_ORDER,
    HyperParams,
    ModelKind,
    TrainedModel,
    score,
    train_model,
    with_standardizer,
)
from .preprocess import SplitIndices, exclude_group, fit_standardizer, split

DEFAULT_SEEDS = (42, 43, 44, 45, 46)

ABLATION_COLUMNS: tuple[FeatureGroup | None, ...] = (
    None,
    FeatureGroup.ACADEMIC,
    FeatureGroup.DEMOGRAPHIC,
    FeatureGroup.MACROECONOMIC,
    FeatureGroup.SOCIOECONOMIC,
)


def column_label(group: FeatureGroup | None) -> str:
    return "baseline" if group is None else f"excl_{group.value}"


@dataclass(frozen=True)
class RunConfig:
    data_path: str | Path
    manifest_path: str | Path
    delimiter: str = ";"
    excluded_group: FeatureGroup | None = None
    models: tuple[ModelKind, ...] = GRID_MODEL_ORDER
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    test_fraction: float = 0.2
    hyperparams: HyperParams = field(default_factory=HyperParams)
    threads: int = 1

    def __post_init__(self):
        if not self.seeds:
            raise InvalidArgumentError("seeds list must be nonempty")
        if not 0.0 < self.test_fraction < 1.0:
            raise InvalidFractionError(
                f"test_fraction must be in (0, 1), got {self.test_fraction}"
            )
        if not self.models:
            raise InvalidArgumentError("models list must be nonempty")


@dataclass(frozen=True)
class AblationReport:
    """Mean-AUC grid: one row per model, one column per feature subset."""

    model_labels: tuple[str, ...]
    column_labels: tuple[str, ...]
    mean_auc: np.ndarray  # models x columns, mean over seeds
    seed_std: np.ndarray  # models x columns, sample std across seeds
    column_mean: np.ndarray  # mean of the model cells per column
    column_std: np.ndarray  # sample std of the model cells per column
    manifest_version: str
    seeds: tuple[int, ...]
    runs: tuple["RunScore", ...]


@dataclass(frozen=True)
class RunScore:
    """One cell contribution: a single (model, column, seed) evaluation."""

    model_label: str
    column_label: str
    seed: int
    auc: float
    accuracy: float


def evaluate_single(
    binary: BinaryDataset,
    indices: SplitIndices,
    kind: ModelKind,
    hp: HyperParams,
    excluded_group: FeatureGroup | None = None,
    threads: int = 1,
) -> tuple[TrainedModel, RocReport]:
    """Train one model on the train rows and score the held-out rows."""
    matrix = binary.feature_matrix
    labels = binary.labels
    train_matrix = matrix[indices.train_rows]
    train_labels = labels[indices.train_rows]
    standardizer = None
    if kind.needs_standardization:
        standardizer = fit_standardizer(matrix, indices.train_rows)
        train_matrix = (train_matrix - standardizer.mean) / standardizer.std

    train_ds = BinaryDataset(
        feature_matrix=train_matrix,
        column_names=binary.column_names,
        column_groups=binary.column_groups,
        labels=train_labels,
    )
    model = train_model(kind, train_ds, hp, threads=threads)
    if standardizer is not None:
        model = with_standardizer(model, standardizer)

    test_scores = score(model, matrix[indices.test_rows])
    test_labels = labels[indices.test_rows]
    curve = roc_curve(test_scores, test_labels)
    report = RocReport(
        model_kind=kind,
        excluded_group=excluded_group,
        seed=indices.seed,
        auc=auc(test_scores, test_labels),
        accuracy=accuracy(test_scores, test_labels, kind.accuracy_threshold),
        curve=curve,
        svm_objective=model.payload.objective if kind is ModelKind.LINEAR_SVM else None,
    )
    return model, report


def _load_binary(config: RunConfig) -> tuple[BinaryDataset, str]:
    manifest = load_manifest(config.manifest_path)
    dataset = load_dataset(config.data_path, manifest, delimiter=config.delimiter)
    return to_binary(dataset), manifest.version_tag


def run_baseline(config: RunConfig) -> list[RocReport]:
    """One report per (model, seed); honors config.excluded_group."""
    binary, _ = _load_binary(config)
    if config.excluded_group is not None:
        binary = exclude_group(binary, config.excluded_group)
    reports = []
    for kind in config.models:
        for seed in config.seeds:
            indices = split(binary.n_rows, config.test_fraction, seed)
            _, report = evaluate_single(
                binary, indices, kind, config.hyperparams,
                excluded_group=config.excluded_group, threads=config.threads,
            )
            reports.append(report)
    return reports


def run_ablation(config: RunConfig) -> AblationReport:
    """Baseline plus the four exclusions under identical per-seed splits."""
    binary, manifest_version = _load_binary(config)
    splits = {
        seed: split(binary.n_rows, config.test_fraction, seed) for seed in config.seeds
    }
    datasets = [
        (column_label(group), binary if group is None else exclude_group(binary, group))
        for group in ABLATION_COLUMNS
    ]

    models = list(GRID_MODEL_ORDER)
    grid = np.zeros((len(models), len(datasets), len(config.seeds)), dtype=np.float64)
    runs: list[RunScore] = []
    for col, (label, ds) in enumerate(datasets):
        for row, kind in enumerate(models):
            for s, seed in enumerate(config.seeds):
                _, report = evaluate_single(
                    ds, splits[seed], kind, config.hyperparams,
                    excluded_group=ABLATION_COLUMNS[col], threads=config.threads,
                )
                grid[row, col, s] = report.auc
                runs.append(
                    RunScore(
                        model_label=kind.label,
                        column_label=label,
                        seed=seed,
                        auc=report.auc,
                        accuracy=report.accuracy,
                    )
                )

    mean_auc = grid.mean(axis=2)
    if len(config.seeds) > 1:
        seed_std = grid.std(axis=2, ddof=1)
    else:
        seed_std = np.zeros_like(mean_auc)
    report = AblationReport(
        model_labels=tuple(kind.label for kind in models),
        column_labels=tuple(label for label, _ in datasets),
        mean_auc=mean_auc,
        seed_std=seed_std,
        column_mean=mean_auc.mean(axis=0),
        column_std=mean_auc.std(axis=0, ddof=1),
        manifest_version=manifest_version,
        seeds=config.seeds,
        runs=tuple(runs),
    )
    for arr in (report.mean_auc, report.seed_std, report.column_mean, report.column_std):
        arr.setflags(write=False)
    return report


def rank_group_influence(report: AblationReport) -> list[tuple[FeatureGroup, float]]:
    """AUC drop per excluded group, largest first; ties alphabetical.

    Drop = baseline column mean minus the excluded column mean; negative
    drops (exclusion helped) are reported as-is.
    """
    baseline = float(report.column_mean[report.column_labels.index("baseline")])
    drops = []
    for group in FeatureGroup:
        label = column_label(group)
        drop = baseline - float(report.column_mean[report.column_labels.index(label)])
        drops.append((group, drop))
    drops.sort(key=lambda item: (-item[1], item[0].value))
    return drops
