"""Confusion matrix, scalar metrics, ROC/AUC, and report emission.

The positive class is wildfire (label 1) throughout. AUC is accumulated
with integer arithmetic (one division at the end), so it matches a
pairwise-concordance computation exactly, ties counting one half.

Zero-denominator conventions: precision, recall, and F1 fall back to 0 when
undefined; MCC falls back to 0 when any marginal count is zero.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import svgplot


@dataclass
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass
class MetricSet:
    accuracy: float
    precision: float
    recall: float
    f1: float
    mcc: float

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "mcc": self.mcc,
        }


@dataclass
class RocCurve:
    fpr: list[float]
    tpr: list[float]
    thresholds: list[float]
    auc: float


def _as_binary(arr, name: str) -> np.ndarray:
    arr = np.asarray(arr)
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    values = np.unique(arr)
    if not np.all(np.isin(values, (0, 1))):
        raise ValueError(f"{name} must be binary 0/1, found values {values}")
    return arr.astype(int)


def confusion(y_true, y_pred) -> ConfusionMatrix:
    """Count TP/TN/FP/FN with wildfire (1) as the positive class."""
    y_true = _as_binary(y_true, "y_true")
    y_pred = _as_binary(y_pred, "y_pred")
    if y_true.shape != y_pred.shape:
        raise ValueError(f"length mismatch: {y_true.shape} vs {y_pred.shape}")
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    tn = int(np.sum((y_true == 0) & (y_pred == 0)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    return ConfusionMatrix(tp=tp, tn=tn, fp=fp, fn=fn)


def metrics(cm: ConfusionMatrix) -> MetricSet:
    """Accuracy, precision, recall, F1, and Matthews correlation coefficient."""
    if cm.total <= 0:
        raise ValueError("confusion matrix has no samples")
    tp, tn, fp, fn = cm.tp, cm.tn, cm.fp, cm.fn
    accuracy = (tp + tn) / cm.total
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall > 0 else 0.0)
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    mcc = (tp * tn - fp * fn) / math.sqrt(denom) if denom > 0 else 0.0
    return MetricSet(accuracy=accuracy, precision=precision, recall=recall,
                     f1=f1, mcc=mcc)


def roc_auc(scores, y_true) -> RocCurve:
    """ROC curve over all distinct score thresholds plus trapezoidal AUC.

    Higher scores mean more anomalous. Equal scores collapse into a single
    threshold step, which renders ties as diagonal segments and makes the
    trapezoidal area equal to concordance probability with half-credit ties.
    """
    scores = np.asarray(scores, dtype=float)
    y_true = _as_binary(y_true, "y_true")
    if scores.shape != y_true.shape:
        raise ValueError(f"length mismatch: {scores.shape} vs {y_true.shape}")
    if not np.all(np.isfinite(scores)):
        raise ValueError("scores must be finite")
    n_pos = int(np.sum(y_true == 1))
    n_neg = int(np.sum(y_true == 0))
    if n_pos == 0 or n_neg == 0:
        raise ValueError("roc_auc needs both classes present in y_true")

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_true = y_true[order]

    # group boundaries where the score changes
    distinct = np.nonzero(np.diff(sorted_scores))[0]
    boundaries = np.concatenate([distinct, [scores.size - 1]])
    cum_tp = np.cumsum(sorted_true)[boundaries]
    cum_fp = (boundaries + 1) - cum_tp

    # integer AUC accumulator: sum of dFP * (TP_prev + TP_cur)
    tp_prev = np.concatenate([[0], cum_tp[:-1]])
    fp_prev = np.concatenate([[0], cum_fp[:-1]])
    num = int(np.sum((cum_fp - fp_prev) * (cum_tp + tp_prev)))
    auc = num / (2 * n_pos * n_neg)

    fpr = [0.0] + (cum_fp / n_neg).tolist()
    tpr = [0.0] + (cum_tp / n_pos).tolist()
    thresholds = [math.inf] + sorted_scores[boundaries].tolist()
    return RocCurve(fpr=fpr, tpr=tpr, thresholds=thresholds, auc=auc)


@dataclass
class RunMetadata:
    run_name: str
    dataset: str
    seed: int
    config_hash: str
    pipeline: str = ""
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)

    def to_dict(self) -> dict:
        return {
            "run_name": self.run_name,
            "dataset": self.dataset,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "pipeline": self.pipeline,
            "threads": self.threads,
        }


def emit_report(
    out_dir,
    run_metadata: RunMetadata,
    metric_set: MetricSet,
    cm: ConfusionMatrix,
    roc: RocCurve | None = None,
    loss_history: dict[str, list[float]] | None = None,
) -> dict[str, Path]:
    """Write metrics JSON, ROC CSV, and SVG plots; returns written paths.

    The JSON is byte-stable for a fixed config and seed apart from the
    ``timestamp`` field.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}
    footer = f"config {run_metadata.config_hash} seed {run_metadata.seed}"

    payload = {
        "schema_version": 1,
        "run": run_metadata.to_dict(),
        "confusion": {"tp": cm.tp, "tn": cm.tn, "fp": cm.fp, "fn": cm.fn},
        "metrics": metric_set.to_dict(),
        "auc": roc.auc if roc is not None else None,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    metrics_path = out_dir / "metrics.json"
    metrics_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    paths["metrics"] = metrics_path

    if roc is not None:
        roc_path = out_dir / "roc.csv"
        lines = ["threshold,fpr,tpr"]
        lines += [f"{t},{f},{p}" for t, f, p in zip(roc.thresholds, roc.fpr, roc.tpr)]
        roc_path.write_text("\n".join(lines) + "\n")
        paths["roc_csv"] = roc_path
        roc_svg = out_dir / "roc.svg"
        roc_svg.write_text(svgplot.roc_plot(roc.fpr, roc.tpr, roc.auc, footer=footer))
        paths["roc_svg"] = roc_svg

    cm_svg = out_dir / "confusion.svg"
    cm_svg.write_text(svgplot.confusion_heatmap(cm.tp, cm.tn, cm.fp, cm.fn,
                                            footer=footer))
    paths["confusion_svg"] = cm_svg

    if loss_history:
        loss_svg = out_dir / "loss_curve.svg"
        loss_svg.write_text(svgplot.line_plot(
            loss_history, title="training loss", xlabel="epoch", ylabel="loss",
            footer=footer))
        paths["loss_svg"] = loss_svg

    return paths
