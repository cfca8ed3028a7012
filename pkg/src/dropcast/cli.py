"""Command-line entry point.

Subcommands: eda, train, ablate, importance, roc, fixture. Outputs land
in the --out directory. Exit codes: 0 success, 1 runtime error (one
diagnostic line on stderr), 2 usage error. No environment variables are
consulted; everything is a flag.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import eda as eda_ops
from . import report as report_ops
from .errors import DropcastError
from .experiments import (
    DEFAULT_SEEDS,
    RunConfig,
    evaluate_single,
    run_ablation,
    run_baseline,
)
from .fixture import generate_fixture
from .ingest import FeatureGroup, default_manifest_path, load_dataset, load_manifest, to_binary
from .metrics import forest_importance
from .models import GRID_MODEL_ORDER, HyperParams, ModelKind
from .models.serialize import save_model
from .preprocess import exclude_group, split
from .svg import emit_roc_svg

_MODEL_CODES = {kind.value: kind for kind in ModelKind}

# Features whose per-category rates the eda command tabulates, matching
# the charted socio-demographic breakdowns.
EDA_RATE_FEATURES = (
    "Marital status",
    "Daytime/evening attendance",
    "Displaced",
    "Educational special needs",
    "Debtor",
    "Tuition fees up to date",
    "Scholarship holder",
    "International",
)


def _slug(name: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in name.lower())


def _add_data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="records CSV path")
    parser.add_argument(
        "--manifest",
        default=None,
        help="feature-group manifest path (default: shipped default-34 manifest)",
    )
    parser.add_argument("--delimiter", default=";", help="CSV delimiter (default ';')")


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seeds",
        default=",".join(str(s) for s in DEFAULT_SEEDS),
        help="comma-separated split seeds (default 42,43,44,45,46)",
    )
    parser.add_argument("--test-fraction", type=float, default=0.2)
    parser.add_argument(
        "--model",
        choices=[*sorted(_MODEL_CODES), "all"],
        default="all",
        help="classifier to run (default all four)",
    )
    parser.add_argument(
        "--exclude",
        choices=[g.value for g in FeatureGroup],
        default=None,
        help="drop all columns of one feature group before training",
    )
    parser.add_argument("--threads", type=int, default=1, help="forest worker threads")
    _add_hyper_flags(parser)


def _add_hyper_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tree-max-depth", type=int, default=5)
    parser.add_argument("--forest-trees", type=int, default=100)
    parser.add_argument("--svm-c", type=float, default=1.0)
    parser.add_argument("--svm-epochs", type=int, default=200)
    parser.add_argument("--knn-k", type=int, default=20)
    parser.add_argument("--train-seed", type=int, default=42, help="model-internal seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dropcast",
        description="Student dropout prediction: training, evaluation, feature-group ablation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eda = sub.add_parser("eda", help="emit exploratory statistics as CSV files")
    _add_data_flags(p_eda)
    p_eda.add_argument("--out", default=".", help="output directory")

    p_train = sub.add_parser("train", help="train models, write ROC CSVs and a JSON report")
    _add_data_flags(p_train)
    _add_run_flags(p_train)
    p_train.add_argument("--out", default=".", help="output directory")
    p_train.add_argument("--save-models", action="store_true",
                         help="also write each trained model in the text format")

    p_roc = sub.add_parser("roc", help="train and plot all ROC curves into one SVG")
    _add_data_flags(p_roc)
    _add_run_flags(p_roc)
    p_roc.add_argument("--out", default=".", help="output directory")

    p_ablate = sub.add_parser("ablate", help="run the feature-group exclusion grid")
    _add_data_flags(p_ablate)
    _add_run_flags(p_ablate)
    p_ablate.add_argument("--out", default=".", help="output directory")

    p_imp = sub.add_parser("importance", help="random-forest feature importance")
    _add_data_flags(p_imp)
    _add_run_flags(p_imp)
    p_imp.add_argument("--out", default=".", help="output directory")

    p_fix = sub.add_parser("fixture", help="generate a synthetic records file")
    p_fix.add_argument("--rows", type=int, required=True)
    p_fix.add_argument("--seed", type=int, default=42)
    p_fix.add_argument("--planted-group", choices=[g.value for g in FeatureGroup], default=None)
    p_fix.add_argument("--strength", type=float, default=0.0)
    p_fix.add_argument("--out", default=".", help="output directory")
    return parser


def _config_from_args(args) -> RunConfig:
    seeds = tuple(int(s) for s in str(args.seeds).split(",") if s.strip())
    models = GRID_MODEL_ORDER if args.model == "all" else (_MODEL_CODES[args.model],)
    hp = HyperParams(
        tree_max_depth=args.tree_max_depth,
        forest_n_trees=args.forest_trees,
        svm_regularization_c=args.svm_c,
        svm_epochs=args.svm_epochs,
        knn_k=args.knn_k,
        seed=args.train_seed,
    )
    return RunConfig(
        data_path=args.data,
        manifest_path=args.manifest or default_manifest_path(),
        delimiter=args.delimiter,
        excluded_group=FeatureGroup(args.exclude) if args.exclude else None,
        models=models,
        seeds=seeds,
        test_fraction=args.test_fraction,
        hyperparams=hp,
        threads=args.threads,
    )


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _manifest_version(config: RunConfig) -> str:
    return load_manifest(config.manifest_path).version_tag


def _cmd_eda(args) -> int:
    out = _out_dir(args)
    manifest = load_manifest(args.manifest or default_manifest_path())
    dataset = load_dataset(args.data, manifest, delimiter=args.delimiter)
    binary = to_binary(dataset)

    report_ops.write_class_distribution_csv(
        eda_ops.class_distribution(dataset), out / "eda_class_distribution.csv"
    )
    report_ops.write_gender_csv(
        eda_ops.gender_distribution(binary), out / "eda_gender_distribution.csv"
    )
    for feature in EDA_RATE_FEATURES:
        if feature in binary.column_names:
            table = eda_ops.rate_by_category(binary, feature)
            report_ops.write_category_rates_csv(
                table, out / f"eda_rates_{_slug(feature)}.csv"
            )
    report_ops.write_correlation_csv(
        eda_ops.correlation_matrix(binary), out / "eda_correlation.csv"
    )
    return 0


def _cmd_train(args, command: str = "train") -> int:
    out = _out_dir(args)
    config = _config_from_args(args)
    reports = run_baseline(config)
    for rep in reports:
        report_ops.write_roc_csv(rep.curve, out / report_ops.roc_csv_name(rep.model_kind.label, rep.seed))
    doc = report_ops.build_run_document(
        command, config, _manifest_version(config), reports, include_curves=True
    )
    report_ops.write_json(doc, out / "report.json")
    if getattr(args, "save_models", False):
        _save_models(args, config, out)
    if command == "roc":
        emit_roc_svg(reports, out / "roc.svg")
    return 0


def _save_models(args, config: RunConfig, out: Path) -> None:
    manifest = load_manifest(config.manifest_path)
    binary = to_binary(load_dataset(config.data_path, manifest, delimiter=config.delimiter))
    if config.excluded_group is not None:
        binary = exclude_group(binary, config.excluded_group)
    for kind in config.models:
        for seed in config.seeds:
            indices = split(binary.n_rows, config.test_fraction, seed)
            model, _ = evaluate_single(binary, indices, kind, config.hyperparams,
                                       excluded_group=config.excluded_group,
                                       threads=config.threads)
            save_model(model, out / f"model_{kind.value}_seed{seed}.txt")


def _cmd_ablate(args) -> int:
    out = _out_dir(args)
    config = _config_from_args(args)
    ablation = run_ablation(config)
    doc = report_ops.build_ablation_document(config, ablation)
    report_ops.write_json(doc, out / "report.json")
    report_ops.write_json(doc["ablation"], out / "ablation.json")
    report_ops.write_ablation_csv(ablation, out / "ablation.csv")

    # Baseline-column curves for the first seed, one per model.
    first_seed_config = RunConfig(
        data_path=config.data_path,
        manifest_path=config.manifest_path,
        delimiter=config.delimiter,
        models=config.models,
        seeds=(config.seeds[0],),
        test_fraction=config.test_fraction,
        hyperparams=config.hyperparams,
        threads=config.threads,
    )
    baseline_reports = run_baseline(first_seed_config)
    emit_roc_svg(baseline_reports, out / "roc.svg")
    return 0


def _cmd_importance(args) -> int:
    out = _out_dir(args)
    config = _config_from_args(args)
    manifest = load_manifest(config.manifest_path)
    binary = to_binary(load_dataset(config.data_path, manifest, delimiter=config.delimiter))
    if config.excluded_group is not None:
        binary = exclude_group(binary, config.excluded_group)

    entries_per_seed = []
    for seed in config.seeds:
        indices = split(binary.n_rows, config.test_fraction, seed)
        model, _ = evaluate_single(
            binary, indices, ModelKind.RANDOM_FOREST, config.hyperparams,
            excluded_group=config.excluded_group, threads=config.threads,
        )
        entries_per_seed.append(forest_importance(model, binary.column_names))

    # Average the per-seed importance vectors for the CSV.
    combined: dict[str, float] = {name: 0.0 for name in binary.column_names}
    for report in entries_per_seed:
        for name, value in report.entries:
            combined[name] += value / len(entries_per_seed)
    ranked = sorted(combined.items(), key=lambda item: (-item[1], item[0]))
    report_ops.write_importance_csv(ranked, out / "importance.csv")

    doc = report_ops.build_run_document("importance", config, manifest.version_tag, [])
    doc["importance"] = [
        {"feature": name, "importance": float(v)} for name, v in ranked
    ]
    report_ops.write_json(doc, out / "report.json")
    return 0


def _cmd_fixture(args) -> int:
    out = _out_dir(args)
    planted = FeatureGroup(args.planted_group) if args.planted_group else None
    generate_fixture(
        out / "fixture.csv",
        out / "fixture_manifest.tsv",
        n_rows=args.rows,
        seed=args.seed,
        planted_group=planted,
        signal_strength=args.strength,
    )
    return 0


_COMMANDS = {
    "eda": _cmd_eda,
    "train": _cmd_train,
    "roc": lambda args: _cmd_train(args, command="roc"),
    "ablate": _cmd_ablate,
    "importance": _cmd_importance,
    "fixture": _cmd_fixture,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (DropcastError, OSError) as exc:
        print(f"dropcast: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
