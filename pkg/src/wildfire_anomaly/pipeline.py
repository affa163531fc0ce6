"""End-to-end pipeline stages behind the CLI subcommands.

Every stage reads and writes artifacts under one output directory:

    prepare/   split manifest, scaled matrices, load report
    train/     autoencoder checkpoint and loss history
    detect/    reconstruction-error scores and the fitted threshold
    cluster/   latent-space detector predictions and PCA coordinates
    importance/ feature ranking CSV and bar chart
    evaluate/  metrics JSON, ROC CSV, and plots

Stages are deterministic for a fixed config (the resolved config hash is
embedded everywhere) and later stages fail with an instruction to run
``prepare`` when its artifacts are missing.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import threshold_detector as td
from .autoencoder import AutoencoderSpec, build, load_checkpoint, save_checkpoint
from .clustering import (
    iforest_fit,
    iforest_predict,
    iforest_scores,
    lof_fit,
    lof_predict,
    lof_scores,
    ocsvm_decision,
    ocsvm_fit,
    ocsvm_predict,
    pca_project,
)
from .config import config_hash, dataset_paths
from .data import (
    get_feature_set,
    label_table,
    load_tables,
    scale_per_split,
    select_features,
    split,
    window_labels,
    window_sequences,
    write_synthetic_sources,
)
from .feature_importance import mdi_importance, rf_fit
from .metrics_report import RunMetadata, confusion, emit_report, metrics, roc_auc
from .nn import OptimizerConfig, ScheduleConfig, TrainConfig, train
from . import svgplot


class MissingArtifactError(FileNotFoundError):
    """A stage was invoked before the stage it depends on."""


def _stage_dir(out_dir, name: str, create: bool = False) -> Path:
    path = Path(out_dir) / name
    if create:
        path.mkdir(parents=True, exist_ok=True)
    return path


def _require(path: Path, produced_by: str) -> Path:
    if not path.exists():
        raise MissingArtifactError(
            f"missing artifact {path}; run the {produced_by!r} step first")
    return path


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_prepare(config: dict, out_dir) -> dict[str, Path]:
    """Load (or synthesise) the sources, label, split, scale, and persist."""
    stage = _stage_dir(out_dir, "prepare", create=True)
    cfg_hash = config_hash(config)

    if config["dataset"].get("synthetic"):
        paths = write_synthetic_sources(stage / "synthetic", seed=config["seed"])
        weather, ndvi, wildfire = paths["weather"], paths["ndvi"], paths["wildfire"]
    else:
        resolved = dataset_paths(config)
        weather, ndvi, wildfire = (resolved["weather"], resolved["ndvi"],
                                   resolved["wildfire"])

    table = label_table(load_tables(weather, ndvi, wildfire))
    feature_set = get_feature_set(config["feature_set"])
    bundle = scale_per_split(
        split(table, seed=config["seed"], feature_set=feature_set),
        mode=config["scaler_mode"],
    )

    window = config["window_length"]
    manifest = bundle.manifest()
    manifest["config_hash"] = cfg_hash
    manifest["load_report"] = {
        "rows_joined": table.load_report.rows_joined,
        "rows_dropped_missing": table.load_report.rows_dropped_missing,
        "rows_kept": table.load_report.rows_kept,
    }
    labels = table.labels
    manifest["class_counts"] = {
        "wildfire": int(labels.sum()),
        "non_wildfire": int((labels == 0).sum()),
    }
    manifest["window_length"] = window
    manifest["sequence_shapes"] = {
        name: [len(fm) // window, window, fm.shape[1]]
        for name, fm in (("train", bundle.train), ("validation", bundle.validation),
                         ("test", bundle.test))
    }

    manifest_path = stage / "manifest.json"
    _write_json(manifest_path, manifest)

    full = select_features(table, feature_set)
    arrays_path = stage / "arrays.npz"
    np.savez_compressed(
        arrays_path,
        train=bundle.train.values,
        validation=bundle.validation.values,
        test=bundle.test.values,
        train_labels=bundle.train.labels,
        validation_labels=bundle.validation.labels,
        test_labels=bundle.test.labels,
        full=full.values,
        full_labels=full.labels,
        scaler_stats=json.dumps({
            "train": bundle.train.scaler_stats,
            "validation": bundle.validation.scaler_stats,
            "test": bundle.test.scaler_stats,
        }).encode(),
    )
    return {"manifest": manifest_path, "arrays": arrays_path}


def _load_prepared(out_dir) -> dict:
    stage = _stage_dir(out_dir, "prepare")
    arrays = _require(stage / "arrays.npz", "prepare")
    manifest = json.loads(_require(stage / "manifest.json", "prepare").read_text())
    with np.load(arrays) as data:
        loaded = {key: np.array(data[key]) for key in data.files
                  if key != "scaler_stats"}
        loaded["scaler_stats"] = json.loads(bytes(data["scaler_stats"]).decode())
    loaded["manifest"] = manifest
    return loaded


def _spec_from_config(config: dict, input_dim: int) -> AutoencoderSpec:
    model = config["model"]
    return AutoencoderSpec(
        kind=model.get("kind", "fc"),
        input_dim=input_dim,
        encoder_units=list(model.get("encoder_units") or []),
        bottleneck=model.get("bottleneck", 0) or 0,
        window_length=model.get("window_length", config["window_length"]),
        activation=model.get("activation", "") or "",
    )


def _optimizer_config(config: dict, batches_per_epoch: int) -> OptimizerConfig:
    opt = config["optimizer"]
    schedule_kind = opt.get("schedule", "none")
    params = dict(opt.get("schedule_params") or {})
    base_lr = opt.get("learning_rate", 1e-3)
    if schedule_kind == "cyclical":
        params.setdefault("base_lr", 1e-4)
        params.setdefault("max_lr", 1e-3)
        params.setdefault("step_size", 4 * batches_per_epoch)
    else:
        params.setdefault("base_lr", base_lr)
    schedule = ScheduleConfig(kind=schedule_kind, **params)
    return OptimizerConfig(
        kind=opt.get("kind", "adam"),
        learning_rate=base_lr,
        schedule=schedule,
    )


def cmd_train(config: dict, out_dir) -> dict[str, Path]:
    """Train the configured autoencoder on the prepared nominal split."""
    prepared = _load_prepared(out_dir)
    stage = _stage_dir(out_dir, "train", create=True)
    cfg_hash = config_hash(config)

    train_X = prepared["train"]
    val_X = prepared["validation"]
    input_dim = train_X.shape[1]
    spec = _spec_from_config(config, input_dim)
    if spec.kind == "lstm":
        train_X = window_sequences(train_X, spec.window_length).data
        val_X = window_sequences(val_X, spec.window_length).data

    ae = build(spec, seed=config["seed"])
    tc = config["train"]
    train_config = TrainConfig(
        epochs=tc["epochs"], batch_size=tc["batch_size"], patience=tc["patience"],
        seed=config["seed"], loss=tc.get("loss", "msle"),
        clip_norm=tc.get("clip_norm", 5.0),
    )
    opt_config = _optimizer_config(
        config, batches_per_epoch=max(1, -(-len(train_X) // train_config.batch_size)))
    result = train(ae.network, (train_X, train_X), (val_X, val_X),
                   train_config, opt_config)

    checkpoint_path = stage / "checkpoint.npz"
    save_checkpoint(checkpoint_path, ae, extra={
        "config_hash": cfg_hash,
        "seed": config["seed"],
        "scaler_stats": prepared["scaler_stats"],
        "best_epoch": result.best_epoch,
        "stopped_epoch": result.stopped_epoch,
    })
    history_path = stage / "history.json"
    _write_json(history_path, {
        "config_hash": cfg_hash,
        "train_loss": result.train_loss,
        "val_loss": result.val_loss,
        "best_epoch": result.best_epoch,
        "stopped_epoch": result.stopped_epoch,
        "early_stopped": result.early_stopped,
    })
    return {"checkpoint": checkpoint_path, "history": history_path}


def _load_model(out_dir):
    stage = _stage_dir(out_dir, "train")
    return load_checkpoint(_require(stage / "checkpoint.npz", "train"))


def _write_scores_csv(path: Path, ids, scores, preds, truths,
                      score_column: str = "score") -> None:
    lines = [f"sample_id,{score_column},label_pred,label_true"]
    lines += [f"{i},{s},{p},{t}" for i, s, p, t in zip(ids, scores, preds, truths)]
    path.write_text("\n".join(lines) + "\n")


def cmd_detect(config: dict, out_dir) -> dict[str, Path]:
    """Score reconstruction errors and apply the train-fitted threshold."""
    prepared = _load_prepared(out_dir)
    ae, _ = _load_model(out_dir)
    stage = _stage_dir(out_dir, "detect", create=True)

    train_X = prepared["train"]
    test_X = prepared["test"]
    test_y = prepared["test_labels"]
    if ae.spec.kind == "lstm":
        window = ae.spec.window_length
        train_X = window_sequences(train_X, window).data
        test_X = window_sequences(test_X, window).data
        test_y = window_labels(prepared["test_labels"], window,
                               rule=config["window_label_rule"])

    train_errors = td.per_sample_errors(ae, train_X)
    threshold = td.fit_threshold(train_errors)
    test_errors = td.per_sample_errors(ae, test_X)
    preds = td.classify(test_errors, threshold)

    scores_path = stage / "scores.csv"
    _write_scores_csv(scores_path, range(len(test_errors)), test_errors, preds,
                      test_y, score_column="msle")
    threshold_path = stage / "threshold.json"
    _write_json(threshold_path, {
        "config_hash": config_hash(config),
        "mu": threshold.mu,
        "sigma": threshold.sigma,
        "value": threshold.value,
        "train_samples": int(len(train_errors)),
    })
    return {"scores": scores_path, "threshold": threshold_path}


def cmd_cluster(config: dict, out_dir) -> dict[str, Path]:
    """Encode to the latent space and run the configured clustering detector."""
    prepared = _load_prepared(out_dir)
    ae, _ = _load_model(out_dir)
    stage = _stage_dir(out_dir, "cluster", create=True)

    latent_train = ae.encode(prepared["train"])
    latent_test = ae.encode(prepared["test"])
    test_y = prepared["test_labels"]
    detector = dict(config.get("detector") or {})
    pipeline = config["pipeline"]

    if pipeline == "cluster_iforest":
        model = iforest_fit(
            latent_train,
            n_estimators=detector.get("n_estimators", 200),
            max_samples=detector.get("max_samples", 0.9),
            contamination=detector.get("contamination", 0.5),
            seed=config["seed"],
        )
        scores = iforest_scores(model, latent_test)
        preds = iforest_predict(model, latent_test)
    elif pipeline == "cluster_lof":
        model = lof_fit(
            latent_train,
            k=detector.get("k", 8),
            metric=detector.get("metric", "manhattan"),
            p=detector.get("p", 3.0),
            contamination=detector.get("contamination", 0.5),
        )
        scores = lof_scores(model, latent_test)
        preds = lof_predict(model, latent_test)
    elif pipeline == "cluster_ocsvm":
        model = ocsvm_fit(
            latent_train,
            kernel=detector.get("kernel", "linear"),
            nu=detector.get("nu", 0.6),
            seed=config["seed"],
            gamma=detector.get("gamma"),
            degree=detector.get("degree", 3),
            coef0=detector.get("coef0", 0.0),
        )
        decisions = ocsvm_decision(model, latent_test)
        scores = -decisions  # higher = more anomalous, consistent with the others
        preds = ocsvm_predict(model, latent_test)
    else:
        raise ValueError(f"cmd_cluster cannot run pipeline {pipeline!r}")

    predictions_path = stage / "predictions.csv"
    _write_scores_csv(predictions_path, range(len(scores)), scores, preds, test_y)

    projection = pca_project(latent_test, out_dim=min(3, latent_test.shape[1]))
    pca_path = stage / "pca_coords.csv"
    dims = projection.coordinates.shape[1]
    header = ",".join(f"pc{i + 1}" for i in range(dims))
    lines = [f"sample_id,{header},label_pred,label_true"]
    for i, (coords, p, t) in enumerate(zip(projection.coordinates, preds, test_y)):
        coord_txt = ",".join(str(c) for c in coords)
        lines.append(f"{i},{coord_txt},{p},{t}")
    pca_path.write_text("\n".join(lines) + "\n")
    return {"predictions": predictions_path, "pca_coords": pca_path}


def cmd_importance(config: dict, out_dir) -> dict[str, Path]:
    """Rank features by random-forest Gini importance over the labeled table."""
    prepared = _load_prepared(out_dir)
    stage = _stage_dir(out_dir, "importance", create=True)

    X = prepared["full"]
    y = prepared["full_labels"]
    feature_set = get_feature_set(config["feature_set"])
    fc = config["forest"]
    forest = rf_fit(
        X, y,
        n_estimators=fc.get("n_estimators", 100),
        min_samples_split=fc.get("min_samples_split", 2),
        min_samples_leaf=fc.get("min_samples_leaf", 2),
        seed=config["seed"],
    )
    report = mdi_importance(forest, feature_names=list(feature_set.columns))

    csv_path = stage / "importance.csv"
    lines = ["feature,mdi,rank"]
    lines += [f"{name},{value},{rank + 1}"
              for rank, (name, value) in enumerate(report.ranked())]
    csv_path.write_text("\n".join(lines) + "\n")

    svg_path = stage / "importance.svg"
    names, values = zip(*report.ranked())
    svg_path.write_text(svgplot.bar_chart(
        list(names), list(values), title="feature importance (MDI)", xlabel="MDI",
        footer=f"config {config_hash(config)} seed {config['seed']}"))
    return {"csv": csv_path, "svg": svg_path}


def _read_scores_csv(path: Path):
    rows = path.read_text().strip().splitlines()[1:]
    ids, scores, preds, truths = [], [], [], []
    for row in rows:
        i, s, p, t = row.split(",")
        ids.append(int(i))
        scores.append(float(s))
        preds.append(int(p))
        truths.append(int(t))
    return (np.asarray(ids), np.asarray(scores), np.asarray(preds),
            np.asarray(truths))


def cmd_evaluate(config: dict, out_dir) -> dict[str, Path]:
    """Score the detector outputs against ground truth and emit the report."""
    pipeline = config["pipeline"]
    if pipeline.startswith("cluster"):
        scores_path = _stage_dir(out_dir, "cluster") / "predictions.csv"
        produced_by = "cluster"
    else:
        scores_path = _stage_dir(out_dir, "detect") / "scores.csv"
        produced_by = "detect"
    _require(scores_path, produced_by)
    _, scores, preds, truths = _read_scores_csv(scores_path)

    cm = confusion(truths, preds)
    metric_set = metrics(cm)
    roc = roc_auc(scores, truths) if len(np.unique(truths)) == 2 else None

    history_path = _stage_dir(out_dir, "train") / "history.json"
    loss_history = None
    if history_path.exists():
        history = json.loads(history_path.read_text())
        loss_history = {"train": history["train_loss"]}
        if history.get("val_loss"):
            loss_history["validation"] = history["val_loss"]

    meta = RunMetadata(
        run_name=config.get("preset", pipeline),
        dataset=config["feature_set"],
        seed=config["seed"],
        config_hash=config_hash(config),
        pipeline=pipeline,
    )
    return emit_report(_stage_dir(out_dir, "evaluate", create=True), meta,
                       metric_set, cm, roc, loss_history)


def cmd_report(config: dict, out_dir) -> dict[str, Path]:
    """Re-render the SVG bundle from stored metrics and history."""
    evaluate_dir = _stage_dir(out_dir, "evaluate")
    metrics_path = _require(evaluate_dir / "metrics.json", "evaluate")
    payload = json.loads(metrics_path.read_text())
    stage = _stage_dir(out_dir, "report", create=True)
    run = payload["run"]
    footer = f"config {run['config_hash']} seed {run['seed']}"

    written: dict[str, Path] = {}
    cm = payload["confusion"]
    confusion_svg = stage / "confusion.svg"
    confusion_svg.write_text(svgplot.confusion_heatmap(
        cm["tp"], cm["tn"], cm["fp"], cm["fn"], footer=footer))
    written["confusion_svg"] = confusion_svg

    roc_csv = evaluate_dir / "roc.csv"
    if roc_csv.exists():
        rows = roc_csv.read_text().strip().splitlines()[1:]
        fpr = [float(r.split(",")[1]) for r in rows]
        tpr = [float(r.split(",")[2]) for r in rows]
        roc_svg = stage / "roc.svg"
        roc_svg.write_text(svgplot.roc_plot(fpr, tpr, payload["auc"] or 0.0,
                                            footer=footer))
        written["roc_svg"] = roc_svg

    history_path = _stage_dir(out_dir, "train") / "history.json"
    if history_path.exists():
        history = json.loads(history_path.read_text())
        series = {"train": history["train_loss"]}
        if history.get("val_loss"):
            series["validation"] = history["val_loss"]
        loss_svg = stage / "loss_curve.svg"
        loss_svg.write_text(svgplot.line_plot(
            series, title="training loss", xlabel="epoch", ylabel="loss",
            footer=footer))
        written["loss_svg"] = loss_svg
    return written


def cmd_run(config: dict, out_dir) -> dict[str, Path]:
    """Execute the configured pipeline end to end (prepare must have run)."""
    _require(_stage_dir(out_dir, "prepare") / "arrays.npz", "prepare")
    pipeline = config["pipeline"]
    written: dict[str, Path] = {}
    if pipeline == "importance":
        written.update(cmd_importance(config, out_dir))
        return written
    written.update(cmd_train(config, out_dir))
    if pipeline.startswith("cluster"):
        written.update(cmd_cluster(config, out_dir))
    else:
        written.update(cmd_detect(config, out_dir))
    written.update(cmd_evaluate(config, out_dir))
    written.update(cmd_report(config, out_dir))
    return written
