"""Command-line pipeline: train, explain, compare, evaluate, synth-data.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
All artifacts land under the configured output directory.  A config file
(flat JSON keys matching RunConfig fields) supplies defaults; explicit
command-line flags override it.  LATENTLENS_MODEL_DIR sets the default
model directory for commands that read artifacts.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import synthdata
from .corpus import Dataset, load_dataset, preprocess
from .errors import DataError, NumericError
from .evaluation import distance_report, fidelity_check, surrogate_fidelity
from .explainer import (
    Explanation,
    explain,
    fit_latent_surrogate,
    fit_lime_surrogate,
    latent_explain,
    lime_explain,
)
from .models import build_and_train_decoder, build_encoder, build_predictor, predict_proba
from .network import Network, TrainConfig, train
from .svgchart import save_chart
from .vectorizer import TfIdfModel

MODEL_DIR_ENV = "LATENTLENS_MODEL_DIR"
META_SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    """Every pipeline knob; all fields default except the dataset path."""

    dataset: str | None = None
    format: str = "tsv"
    text_col: str = "text"
    label_col: str = "label"
    has_header: bool = True
    class_names: tuple[str, str] | None = None
    normalizer: str = "snowball"
    hidden_dims: tuple[int, ...] = (512, 256, 128, 64)
    latent_dim: int = 32
    decoder_dims: tuple[int, ...] = (64, 128, 256)
    epochs: int = 20
    decoder_epochs: int = 40
    batch_size: int = 64
    learning_rate: float = 1e-3
    optimizer: str = "adam"
    decoder_loss: str = "per_dim_crossentropy"
    alpha: float = 1e-3
    lime_samples: int = 5000
    factors: tuple[float, ...] = (0.0, 0.25, 0.5, 2.0, 4.0)
    transform: str = "identity"
    top_k: int = 10
    val_fraction: float = 0.2
    seed: int = 0
    out: str = "latentlens-out"


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    file = Path(path)
    if not file.exists():
        raise DataError(f"config file not found: {file}")
    try:
        values = json.loads(file.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"config file {file} is not valid JSON: {exc}") from exc
    if not isinstance(values, dict):
        raise DataError(f"config file {file} must hold a flat JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise DataError(f"config file {file}: unknown keys {sorted(unknown)}")
    return values


def _merge_config(file_values: dict, args: argparse.Namespace) -> RunConfig:
    merged = {}
    for field in dataclasses.fields(RunConfig):
        cli_value = getattr(args, field.name, None)
        if cli_value is not None:
            merged[field.name] = cli_value
        elif field.name in file_values:
            merged[field.name] = file_values[field.name]
    cfg = RunConfig(**merged)
    if cfg.class_names is not None and len(cfg.class_names) != 2:
        raise DataError("class_names must hold exactly two names")
    return dataclasses.replace(
        cfg,
        hidden_dims=tuple(int(d) for d in cfg.hidden_dims),
        decoder_dims=tuple(int(d) for d in cfg.decoder_dims),
        factors=tuple(float(f) for f in cfg.factors),
        class_names=tuple(cfg.class_names) if cfg.class_names is not None else None,
    )


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _str_pair(text: str) -> tuple[str, str]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated names, got {text!r}")
    return parts


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _split_indices(n: int, val_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    order = np.random.default_rng(seed).permutation(n)
    n_val = int(round(n * val_fraction))
    return order[n_val:], order[:n_val]


def _accuracy(probs: np.ndarray, labels: np.ndarray) -> float:
    return float(np.mean((probs > 0.5) == (labels == 1)))


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def cmd_train(cfg: RunConfig) -> int:
    dataset = load_dataset(
        cfg.dataset,
        format=cfg.format,
        text_col=cfg.text_col,
        label_col=cfg.label_col,
        has_header=cfg.has_header,
        class_names=list(cfg.class_names) if cfg.class_names else None,
    )
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)

    token_lists = [preprocess(text, cfg.normalizer) for text in dataset.texts()]
    labels = np.array(dataset.labels(), dtype=np.float64)
    train_idx, val_idx = _split_indices(len(dataset), cfg.val_fraction, cfg.seed)

    vectorizer = TfIdfModel.fit([token_lists[i] for i in train_idx])
    X = vectorizer.transform_many(token_lists)
    X_train, y_train = X[train_idx], labels[train_idx]
    X_val, y_val = X[val_idx], labels[val_idx]

    predictor = build_predictor(
        vectorizer.vocabulary_size, list(cfg.hidden_dims), cfg.latent_dim, seed=cfg.seed
    )
    predictor_history = train(
        predictor,
        X_train,
        y_train,
        TrainConfig(
            epochs=cfg.epochs,
            batch_size=cfg.batch_size,
            learning_rate=cfg.learning_rate,
            seed=cfg.seed,
            optimizer=cfg.optimizer,
        ),
    )
    train_acc = _accuracy(predict_proba(predictor, X_train), y_train)
    val_acc = _accuracy(predict_proba(predictor, X_val), y_val) if len(val_idx) else None

    encoder = build_encoder(predictor)
    decoder, decoder_history = build_and_train_decoder(
        encoder,
        list(cfg.decoder_dims),
        X_train,
        TrainConfig(
            epochs=cfg.decoder_epochs,
            batch_size=cfg.batch_size,
            learning_rate=cfg.learning_rate,
            seed=cfg.seed + 1,
            optimizer=cfg.optimizer,
        ),
        loss=cfg.decoder_loss,
    )

    vectorizer.save(out / "vectorizer.json")
    predictor.save(out / "predictor.json")
    decoder.save(out / "decoder.json")
    _write_json(
        out / "metrics.json",
        {
            "train_accuracy": train_acc,
            "val_accuracy": val_acc,
            "predictor_loss_history": predictor_history,
            "reconstruction_loss_history": decoder_history,
            "reconstruction_loss_first": decoder_history[0],
            "reconstruction_loss_final": decoder_history[-1],
            "n_train": int(len(train_idx)),
            "n_val": int(len(val_idx)),
            "vocabulary_size": vectorizer.vocabulary_size,
        },
    )
    _write_json(
        out / "meta.json",
        {
            "schema_version": META_SCHEMA_VERSION,
            "class_names": dataset.class_names,
            "positive_class": dataset.positive_class,
            "normalizer": cfg.normalizer,
            "latent_dim": cfg.latent_dim,
            "factors": list(cfg.factors),
            "alpha": cfg.alpha,
            "transform": cfg.transform,
            "lime_samples": cfg.lime_samples,
            "seed": cfg.seed,
            "val_fraction": cfg.val_fraction,
            "n_documents": len(dataset),
        },
    )
    print(f"trained on {len(train_idx)} documents, vocabulary {vectorizer.vocabulary_size}")
    print(f"train accuracy {train_acc:.4f}" + (f", validation accuracy {val_acc:.4f}" if val_acc is not None else ""))
    print(
        f"reconstruction loss {decoder_history[0]:.6f} -> {decoder_history[-1]:.6f} "
        f"over {cfg.decoder_epochs} epochs"
    )
    print(f"artifacts written to {out}")
    return EXIT_OK


class _Artifacts:
    def __init__(self, model_dir: Path) -> None:
        for name in ("vectorizer.json", "predictor.json", "decoder.json", "meta.json"):
            if not (model_dir / name).exists():
                raise DataError(f"missing artifact {name} in {model_dir}")
        self.vectorizer = TfIdfModel.load(model_dir / "vectorizer.json")
        self.predictor = Network.load(model_dir / "predictor.json")
        self.decoder = Network.load(model_dir / "decoder.json")
        self.meta = json.loads((model_dir / "meta.json").read_text(encoding="utf-8"))
        self.encoder = build_encoder(self.predictor)

    @property
    def positive_class_name(self) -> str:
        return self.meta["class_names"][self.meta["positive_class"]]

    def vectorize_text(self, text: str) -> np.ndarray:
        tokens = preprocess(text, self.meta["normalizer"])
        vec = self.vectorizer.transform(tokens)
        if not np.any(vec):
            raise DataError("text has no in-vocabulary features; nothing to explain")
        return vec


def _resolve_model_dir(value: str | None) -> Path:
    if value is None:
        value = os.environ.get(MODEL_DIR_ENV)
    if value is None:
        raise DataError(
            f"no model directory given; pass --model-dir or set {MODEL_DIR_ENV}"
        )
    return Path(value)


def _explanation_files(
    explanation: Explanation, out: Path, stem_name: str, top_k: int
) -> None:
    explanation.save(out / f"{stem_name}.json")
    items = explanation.top_features(top_k)
    if not items:
        items = [(explanation.feature_names[0] if explanation.feature_names else "(none)", 0.0)]
    save_chart(items, out / f"{stem_name}.svg")


def cmd_explain(args: argparse.Namespace) -> int:
    model_dir = _resolve_model_dir(args.model_dir)
    artifacts = _Artifacts(model_dir)
    meta = artifacts.meta
    out = Path(args.out) if args.out else model_dir
    out.mkdir(parents=True, exist_ok=True)
    x = artifacts.vectorize_text(args.text)

    alpha = args.alpha if args.alpha is not None else meta["alpha"]
    feature_names = artifacts.vectorizer.terms
    if args.method == "latent":
        explanation = latent_explain(
            x,
            artifacts.encoder,
            artifacts.decoder,
            artifacts.predictor,
            feature_names,
            artifacts.positive_class_name,
            alpha=alpha,
            factors=tuple(meta["factors"]),
            transform=args.transform if args.transform is not None else meta["transform"],
        )
    else:
        explanation = lime_explain(
            x,
            artifacts.predictor,
            feature_names,
            artifacts.positive_class_name,
            n_samples=args.lime_samples if args.lime_samples is not None else meta["lime_samples"],
            alpha=alpha,
            seed=args.seed if args.seed is not None else meta["seed"],
        )
    _explanation_files(explanation, out, "explanation", args.top_k)
    print(
        f"probability of {artifacts.positive_class_name!r}: "
        f"{explanation.predicted_probability:.6g}"
    )
    for name, value in explanation.top_features(args.top_k):
        print(f"  {name:<24}{value:+.6f}")
    print(f"wrote {out / 'explanation.json'} and {out / 'explanation.svg'}")
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    model_dir = _resolve_model_dir(args.model_dir)
    artifacts = _Artifacts(model_dir)
    meta = artifacts.meta
    out = Path(args.out) if args.out else model_dir
    out.mkdir(parents=True, exist_ok=True)
    x = artifacts.vectorize_text(args.text)

    alpha = args.alpha if args.alpha is not None else meta["alpha"]
    seed = args.seed if args.seed is not None else meta["seed"]
    feature_names = artifacts.vectorizer.terms
    latent_expl = latent_explain(
        x,
        artifacts.encoder,
        artifacts.decoder,
        artifacts.predictor,
        feature_names,
        artifacts.positive_class_name,
        alpha=alpha,
        factors=tuple(meta["factors"]),
        transform=meta["transform"],
    )
    lime_expl = lime_explain(
        x,
        artifacts.predictor,
        feature_names,
        artifacts.positive_class_name,
        n_samples=args.lime_samples if args.lime_samples is not None else meta["lime_samples"],
        alpha=alpha,
        seed=seed,
    )
    report = distance_report(
        x, artifacts.encoder, artifacts.decoder, mode="single",
        factors=tuple(meta["factors"]),
    )

    _explanation_files(latent_expl, out, "explanation_latent", args.top_k)
    _explanation_files(lime_expl, out, "explanation_lime", args.top_k)
    _write_json(out / "distances.json", report.to_dict())
    table = report.as_table()
    (out / "distances.txt").write_text(table + "\n", encoding="utf-8")
    print(table)
    print(
        f"probability of {artifacts.positive_class_name!r}: "
        f"{latent_expl.predicted_probability:.6g}"
    )
    print(f"comparison bundle written to {out}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    model_dir = _resolve_model_dir(args.model_dir)
    artifacts = _Artifacts(model_dir)
    meta = artifacts.meta
    out = Path(args.out) if args.out else model_dir
    out.mkdir(parents=True, exist_ok=True)

    dataset = load_dataset(
        args.dataset,
        format=args.format or "tsv",
        text_col=args.text_col or "text",
        label_col=args.label_col or "label",
        has_header=not args.no_header,
    )
    if len(dataset) != meta["n_documents"]:
        raise DataError(
            f"dataset has {len(dataset)} documents but the model was trained on "
            f"{meta['n_documents']}; pass the same file used for training"
        )
    _, val_idx = _split_indices(len(dataset), meta["val_fraction"], meta["seed"])

    vectors = []
    for idx in val_idx:
        tokens = preprocess(dataset.documents[idx].raw_text, meta["normalizer"])
        vec = artifacts.vectorizer.transform(tokens)
        if np.any(vec):
            vectors.append(vec)
    n_requested = args.n_instances
    if n_requested > len(vectors):
        print(
            f"warning: only {len(vectors)} usable held-out instances; "
            f"clamping n_instances from {n_requested}",
            file=sys.stderr,
        )
        n_requested = len(vectors)
    if n_requested == 0:
        raise DataError("no usable held-out instances to evaluate")
    rng = np.random.default_rng(args.seed)
    chosen = rng.choice(len(vectors), size=n_requested, replace=False)

    feature_names = artifacts.vectorizer.terms
    agreements = []
    r2_values = []
    ordering_wins = []
    for idx in chosen:
        x = vectors[int(idx)]
        fit = fit_latent_surrogate(
            x,
            artifacts.encoder,
            artifacts.decoder,
            artifacts.predictor,
            alpha=meta["alpha"],
            factors=tuple(meta["factors"]),
            transform=meta["transform"],
        )
        explanation = explain(
            x, fit.coefficients, fit.intercept, artifacts.predictor,
            feature_names, artifacts.positive_class_name,
        )
        results = fidelity_check(x, explanation, artifacts.predictor, top_k=1)
        if results:
            agreements.append(results[0].agrees)
        score = surrogate_fidelity(fit, fit.oracle)
        if score["r2"] is not None:
            r2_values.append(score["r2"])
        report = distance_report(
            x, artifacts.encoder, artifacts.decoder, mode="single",
            factors=tuple(meta["factors"]),
        )
        ordering_wins.append(report.ordering_holds())

    payload = {
        "n_instances": int(n_requested),
        "fidelity_agreement_rate": float(np.mean(agreements)) if agreements else None,
        "mean_surrogate_r2": float(np.mean(r2_values)) if r2_values else None,
        "distance_ordering_win_rate": float(np.mean(ordering_wins)),
    }
    _write_json(out / "evaluation.json", payload)
    print(json.dumps(payload, indent=2))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this maps them to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latentlens", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    train_p = sub.add_parser("train", help="train the classifier and decoder, write artifacts")
    train_p.add_argument("--dataset", help="path to the labeled corpus")
    train_p.add_argument("--config", help="flat JSON config file; flags override it")
    train_p.add_argument("--format", choices=["csv", "tsv"])
    train_p.add_argument("--text-col", dest="text_col")
    train_p.add_argument("--label-col", dest="label_col")
    train_p.add_argument("--no-header", dest="has_header", action="store_false", default=None)
    train_p.add_argument("--class-names", dest="class_names", type=_str_pair,
                         help="negative,positive label order, e.g. ham,spam")
    train_p.add_argument("--normalizer", choices=["snowball", "none"])
    train_p.add_argument("--hidden-dims", dest="hidden_dims", type=_int_list)
    train_p.add_argument("--latent-dim", dest="latent_dim", type=_positive_int)
    train_p.add_argument("--decoder-dims", dest="decoder_dims", type=_int_list)
    train_p.add_argument("--epochs", type=_positive_int)
    train_p.add_argument("--decoder-epochs", dest="decoder_epochs", type=_positive_int)
    train_p.add_argument("--batch-size", dest="batch_size", type=_positive_int)
    train_p.add_argument("--learning-rate", dest="learning_rate", type=float)
    train_p.add_argument("--optimizer", choices=["sgd", "adam"])
    train_p.add_argument("--decoder-loss", dest="decoder_loss",
                         choices=["per_dim_crossentropy", "mse"])
    train_p.add_argument("--val-fraction", dest="val_fraction", type=float)
    train_p.add_argument("--seed", type=int)
    train_p.add_argument("--out")

    def add_model_args(p):
        p.add_argument("--model-dir", dest="model_dir",
                       help=f"artifact directory (default ${MODEL_DIR_ENV})")
        p.add_argument("--out", help="output directory (default: the model directory)")
        p.add_argument("--alpha", type=float, help="surrogate ridge regularization")
        p.add_argument("--lime-samples", dest="lime_samples", type=_positive_int)
        p.add_argument("--seed", type=int)
        p.add_argument("--top-k", dest="top_k", type=_positive_int, default=10)

    explain_p = sub.add_parser("explain", help="explain one text")
    explain_p.add_argument("--text", required=True)
    explain_p.add_argument("--method", choices=["latent", "lime"], default="latent")
    explain_p.add_argument("--transform", choices=["identity", "logit"])
    add_model_args(explain_p)

    compare_p = sub.add_parser("compare", help="both explanations plus the distance table")
    compare_p.add_argument("--text", required=True)
    add_model_args(compare_p)

    eval_p = sub.add_parser("evaluate", help="aggregate fidelity/distance report")
    eval_p.add_argument("--dataset", required=True, help="the corpus used for training")
    eval_p.add_argument("--format", choices=["csv", "tsv"])
    eval_p.add_argument("--text-col", dest="text_col")
    eval_p.add_argument("--label-col", dest="label_col")
    eval_p.add_argument("--no-header", dest="no_header", action="store_true")
    eval_p.add_argument("--n-instances", dest="n_instances", type=_positive_int, default=10)
    eval_p.add_argument("--seed", type=int, default=0)
    eval_p.add_argument("--model-dir", dest="model_dir")
    eval_p.add_argument("--out")

    synth_p = sub.add_parser("synth-data", help="write a synthetic spam/ham TSV corpus")
    synth_p.add_argument("--out", required=True)
    synth_p.add_argument("--n-spam", dest="n_spam", type=_positive_int,
                         default=synthdata.DEFAULT_N_SPAM)
    synth_p.add_argument("--n-ham", dest="n_ham", type=_positive_int,
                         default=synthdata.DEFAULT_N_HAM)
    synth_p.add_argument("--seed", type=int, default=20)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "train":
            cfg = _merge_config(_load_config_file(args.config), args)
            if cfg.dataset is None:
                parser.error("train requires --dataset (or a config file providing it)")
            return cmd_train(cfg)
        if args.command == "explain":
            return cmd_explain(args)
        if args.command == "compare":
            return cmd_compare(args)
        if args.command == "evaluate":
            return cmd_evaluate(args)
        if args.command == "synth-data":
            synthdata.write_tsv(
                args.out, synthdata.generate_sms_corpus(args.n_spam, args.n_ham, args.seed)
            )
            print(f"wrote {args.n_spam + args.n_ham} rows to {args.out}")
            return EXIT_OK
        parser.error(f"unknown command {args.command!r}")
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
