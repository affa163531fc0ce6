"""Acceptance suite: one test per release criterion.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see
them) and enforces its stated tolerance. The two criteria that need the
real downloaded dataset skip with an explanatory message when the data
directory is absent; point WILDFIRE_DATA_DIR at a directory containing
weather.csv, ndvi.csv, and wildfire.csv to enable them.
"""

import json
import math
import os
import time
from pathlib import Path

import numpy as np
import pytest

from oracles import brute_lof, concordance_auc, naive_metrics, qp_one_class_dual
from wildfire_anomaly.autoencoder import AutoencoderSpec, build
from wildfire_anomaly.clustering import (
    kernel_matrix,
    lof_fit,
    lof_scores,
    ocsvm_fit,
    ocsvm_predict,
)
from wildfire_anomaly.config import DATA_DIR_ENV, resolve_config
from wildfire_anomaly.data import make_reconstruction_benchmark
from wildfire_anomaly.metrics_report import confusion, metrics, roc_auc
from wildfire_anomaly.nn import OptimizerConfig, TrainConfig, gradient_check, train
from wildfire_anomaly.pipeline import cmd_prepare, cmd_run
from wildfire_anomaly.threshold_detector import classify, fit_threshold


def _report(criterion: int, passed: bool, detail: str):
    status = "PASS" if passed else "FAIL"
    print(f"criterion {criterion:2d}: {status} - {detail}")
    assert passed, f"criterion {criterion}: {detail}"


def _data_dir() -> Path | None:
    base = Path(os.environ.get(DATA_DIR_ENV, "data"))
    needed = ["weather.csv", "ndvi.csv", "wildfire.csv"]
    if all((base / name).exists() for name in needed):
        return base
    return None


REAL_DATA = _data_dir()
needs_real_data = pytest.mark.skipif(
    REAL_DATA is None,
    reason=f"real dataset not found; set {DATA_DIR_ENV} to a directory with "
           "weather.csv, ndvi.csv, wildfire.csv",
)


def test_criterion_1_metric_oracle_equivalence():
    rng = np.random.default_rng(0)
    start = time.time()
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 501))
        y = rng.integers(0, 2, size=n)
        p = rng.integers(0, 2, size=n)
        want = naive_metrics(y, p)
        cm = confusion(y, p)
        assert (cm.tp, cm.tn, cm.fp, cm.fn) == (
            want["tp"], want["tn"], want["fp"], want["fn"])
        got = metrics(cm)
        for key in ("accuracy", "precision", "recall", "f1", "mcc"):
            worst = max(worst, abs(getattr(got, key) - want[key]))
    elapsed = time.time() - start
    _report(1, worst <= 1e-12 and elapsed < 5.0,
            f"1000 vectors, max deviation {worst:.2e}, {elapsed:.2f}s")


def test_criterion_2_gradient_correctness():
    start = time.time()
    ok = 0
    total = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        units = sorted((int(rng.integers(2, 17))
                        for _ in range(int(rng.integers(1, 5)))), reverse=True)
        input_dim = int(rng.integers(3, 9))
        ae = build(AutoencoderSpec(kind="fc", input_dim=input_dim,
                                   encoder_units=units), seed=seed)
        X = rng.uniform(0.1, 0.9, size=(4, input_dim))
        frac, n = gradient_check(ae.network, X, X, loss_name="msle", h=1e-5,
                                 rel_tol=1e-4)
        ok += frac * n
        total += n

        units = sorted((int(rng.integers(2, 9))
                        for _ in range(int(rng.integers(1, 3)))), reverse=True)
        input_dim = int(rng.integers(2, 5))
        window = int(rng.integers(3, 5))
        ae = build(AutoencoderSpec(kind="lstm", input_dim=input_dim,
                                   encoder_units=units, window_length=window),
                   seed=seed)
        X = rng.uniform(0.1, 0.9, size=(3, window, input_dim))
        frac, n = gradient_check(ae.network, X, X, loss_name="msle", h=1e-5,
                                 rel_tol=1e-4)
        ok += frac * n
        total += n
    fraction = ok / total
    elapsed = time.time() - start
    _report(2, fraction > 0.99 and elapsed < 60.0,
            f"{fraction:.4%} of {total} parameters within 1e-4, {elapsed:.1f}s")


def test_criterion_3_threshold_rule():
    t = fit_threshold(np.array([1.0, 1.0, 1.0, 5.0]))
    expected = 2.0 + 2.0 * math.sqrt(3.0)
    exact = abs(t.value - expected) <= 1e-12
    # no element of {1,1,1,5} reaches mu + 2 sigma; the boundary itself does
    flags = classify(np.array([1.0, 1.0, 1.0, 5.0]), t)
    boundary = classify(np.array([expected, np.nextafter(expected, 0.0)]), t)
    correct_flags = flags.tolist() == [0, 0, 0, 0] and boundary.tolist() == [1, 0]
    _report(3, exact and correct_flags,
            f"threshold {t.value!r} vs 2+2*sqrt(3), flags {flags.tolist()}, "
            f"boundary tie -> {boundary.tolist()}")


def test_criterion_4_lof_brute_force_equivalence():
    rng = np.random.default_rng(1)
    metrics_cycle = ("euclidean", "manhattan", "minkowski")
    worst = 0.0
    for trial in range(200):
        n = int(rng.integers(3, 13))
        d = int(rng.integers(1, 5))
        k = int(rng.integers(1, n))
        metric = metrics_cycle[trial % 3]
        train_pts = rng.normal(size=(n, d))
        queries = rng.normal(size=(4, d))
        model = lof_fit(train_pts, k=k, metric=metric, contamination=0.5)
        worst = max(worst, float(np.max(np.abs(
            model.train_scores
            - brute_lof(train_pts, train_pts, k, metric, queries_in_train=True)))))
        worst = max(worst, float(np.max(np.abs(
            lof_scores(model, queries) - brute_lof(train_pts, queries, k, metric)))))
    _report(4, worst <= 1e-9,
            f"200 datasets x 3 metrics, max |module - oracle| = {worst:.2e}")


def test_criterion_5_ocsvm_nu_property():
    # flagged-fraction band: data offset from the origin, as in the real
    # pipeline (non-negative latent features); the single-class separating
    # hyperplane is degenerate for origin-centred clouds
    rng = np.random.default_rng(0)
    worst_dev = 0.0
    for nu in (0.3, 0.6):
        for _ in range(50):
            X = rng.normal(loc=3.0, scale=1.0, size=(40, 2))
            model = ocsvm_fit(X, kernel="linear", nu=nu)
            fraction = ocsvm_predict(model, X).mean()
            worst_dev = max(worst_dev, abs(fraction - nu))
    band_ok = worst_dev <= 0.05

    rng = np.random.default_rng(2)
    worst_gap = 0.0
    for _ in range(20):
        n = int(rng.integers(4, 11))
        X = rng.normal(loc=2.0, size=(n, 2))
        nu = float(rng.uniform(0.3, 0.9))
        kernel = ("linear", "rbf")[int(rng.integers(2))]
        model = ocsvm_fit(X, kernel=kernel, nu=nu)
        K = kernel_matrix(X, X, kernel, model.gamma, model.degree, model.coef0)
        _, oracle_obj = qp_one_class_dual(K, upper=1.0 / (nu * n))
        worst_gap = max(worst_gap, abs(model.dual_objective - oracle_obj))
    dual_ok = worst_gap <= 1e-3
    _report(5, band_ok and dual_ok,
            f"worst |fraction - nu| = {worst_dev:.4f} (<= 0.05), "
            f"worst dual gap vs QP oracle = {worst_gap:.2e} (<= 1e-3)")


def test_criterion_6_auc_concordance():
    rng = np.random.default_rng(3)
    worst = 0.0
    for trial in range(500):
        n = int(rng.integers(2, 201))
        y = rng.integers(0, 2, size=n)
        y[0], y[1] = 0, 1
        decimals = (1, 2, 6)[trial % 3]  # coarse rounding forces ties
        scores = np.round(rng.normal(size=n), decimals)
        worst = max(worst, abs(roc_auc(scores, y).auc - concordance_auc(scores, y)))
    separated = roc_auc([4.0, 3.0, 2.0, 1.0], [1, 1, 0, 0]).auc
    _report(6, worst <= 1e-12 and separated == 1.0,
            f"500 sets, max |auc - concordance| = {worst:.2e}; "
            f"separated scores -> {separated}")


def test_criterion_7_synthetic_end_to_end():
    start = time.time()
    results = []
    for seed in range(5):
        bench = make_reconstruction_benchmark(seed)
        ae = build(AutoencoderSpec(kind="fc", input_dim=28,
                                   encoder_units=[64, 32, 16]), seed=seed)
        train(ae.network, (bench.train, bench.train), (bench.train, bench.train),
              TrainConfig(epochs=30, batch_size=64, patience=0, seed=seed),
              OptimizerConfig(kind="adam", learning_rate=3e-3))
        from wildfire_anomaly.threshold_detector import per_sample_errors

        threshold = fit_threshold(per_sample_errors(ae, bench.train))
        preds = classify(per_sample_errors(ae, bench.test), threshold)
        y = bench.test_labels
        results.append((preds[y == 1].mean(), preds[y == 0].mean()))
    elapsed = time.time() - start
    ok = all(recall >= 0.85 and fpr <= 0.15 for recall, fpr in results)
    detail = ", ".join(f"seed{i}: r={r:.2f}/fpr={f:.2f}"
                       for i, (r, f) in enumerate(results))
    _report(7, ok and elapsed < 180.0, f"{detail}; {elapsed:.1f}s")


@needs_real_data
def test_criterion_8_published_results_reproduction(tmp_path):
    start = time.time()
    base = {"dataset": {
        "weather": str(REAL_DATA / "weather.csv"),
        "ndvi": str(REAL_DATA / "ndvi.csv"),
        "wildfire": str(REAL_DATA / "wildfire.csv"),
    }}
    observed = {}
    runs = [
        ("fc-model-b", "fc"),
        ("lstm-final", "lstm"),
        ("lof-c", "lof"),
    ]
    for preset, key in runs:
        out = tmp_path / key
        config = resolve_config(preset=preset, overrides={**base, "seed": 0})
        cmd_prepare(config, out)
        cmd_run(config, out)
        payload = json.loads((out / "evaluate" / "metrics.json").read_text())
        observed[key] = payload["metrics"]
    elapsed = time.time() - start

    fc_ok = (abs(observed["fc"]["f1"] - 0.742) <= 0.08
             and abs(observed["fc"]["accuracy"] - 0.711) <= 0.08)
    lstm_ok = abs(observed["lstm"]["mcc"]) <= 0.15
    lof_ok = abs(observed["lof"]["f1"] - 0.719) <= 0.10
    _report(8, fc_ok and lstm_ok and lof_ok and elapsed < 1800.0,
            f"fc f1={observed['fc']['f1']:.3f} acc={observed['fc']['accuracy']:.3f}, "
            f"lstm mcc={observed['lstm']['mcc']:.3f}, "
            f"lof f1={observed['lof']['f1']:.3f}; {elapsed:.0f}s")


def test_criterion_9_determinism(tmp_path):
    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps({
        "dataset": {"synthetic": True},
        "model": {"kind": "fc", "encoder_units": [32, 16]},
        "train": {"epochs": 3, "batch_size": 64, "patience": 0},
        "seed": 13,
    }))
    payloads = []
    for name in ("first", "second"):
        out = tmp_path / name
        config = resolve_config(config_file)
        cmd_prepare(config, out)
        cmd_run(config, out)
        payload = json.loads((out / "evaluate" / "metrics.json").read_text())
        payload.pop("timestamp")
        payloads.append(json.dumps(payload, sort_keys=True))
    _report(9, payloads[0] == payloads[1],
            "repeated run produced byte-identical metrics JSON "
            "(timestamp excluded)")


@needs_real_data
def test_criterion_10_split_fidelity(tmp_path):
    config = resolve_config(overrides={
        "dataset": {
            "weather": str(REAL_DATA / "weather.csv"),
            "ndvi": str(REAL_DATA / "ndvi.csv"),
            "wildfire": str(REAL_DATA / "wildfire.csv"),
        },
        "seed": 0,
    })
    cmd_prepare(config, tmp_path)
    manifest = json.loads((tmp_path / "prepare" / "manifest.json").read_text())
    counts_ok = (manifest["counts"]["train"] == 12869
                 and manifest["counts"]["test"] == 1715
                 and manifest["counts"]["validation"] == 1715)
    labels_ok = (manifest["class_counts"]["wildfire"] == 26677
                 and manifest["class_counts"]["non_wildfire"] == 14299)
    shapes = manifest["sequence_shapes"]
    shapes_ok = (shapes["train"] == [1286, 10, 28]
                 and shapes["test"] == [171, 10, 28])
    _report(10, counts_ok and labels_ok and shapes_ok,
            f"counts {manifest['counts']}, labels {manifest['class_counts']}, "
            f"shapes {shapes}")
