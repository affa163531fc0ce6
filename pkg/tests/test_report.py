import json

import numpy as np
import pytest

from wildfire_anomaly.metrics_report import (
    ConfusionMatrix,
    RunMetadata,
    confusion,
    emit_report,
    metrics,
    roc_auc,
)


@pytest.fixture
def minimal_run():
    rng = np.random.default_rng(0)
    scores = rng.uniform(size=60)
    y_true = (scores + rng.normal(scale=0.3, size=60) > 0.5).astype(int)
    y_true[:2] = [0, 1]
    preds = (scores > 0.5).astype(int)
    cm = confusion(y_true, preds)
    return {
        "meta": RunMetadata(run_name="test-run", dataset="Dataset1", seed=7,
                            config_hash="deadbeef", pipeline="recon_fc"),
        "metrics": metrics(cm),
        "cm": cm,
        "roc": roc_auc(scores, y_true),
        "history": {"train": [0.5, 0.4, 0.3], "validation": [0.6, 0.5, 0.45]},
    }


def test_minimal_run_emits_files_and_json_round_trips(tmp_path, minimal_run):
    paths = emit_report(tmp_path, minimal_run["meta"], minimal_run["metrics"],
                        minimal_run["cm"], minimal_run["roc"],
                        minimal_run["history"])
    for key in ("metrics", "roc_csv", "roc_svg", "confusion_svg", "loss_svg"):
        assert paths[key].exists(), key
    payload = json.loads(paths["metrics"].read_text())
    assert payload["run"]["seed"] == 7
    assert payload["run"]["config_hash"] == "deadbeef"
    assert payload["run"]["dataset"] == "Dataset1"
    assert payload["metrics"]["accuracy"] == minimal_run["metrics"].accuracy
    assert payload["confusion"]["tp"] == minimal_run["cm"].tp
    assert payload["auc"] == minimal_run["roc"].auc


def test_identical_runs_byte_identical_except_timestamp(tmp_path, minimal_run):
    p1 = emit_report(tmp_path / "a", minimal_run["meta"], minimal_run["metrics"],
                     minimal_run["cm"], minimal_run["roc"], minimal_run["history"])
    p2 = emit_report(tmp_path / "b", minimal_run["meta"], minimal_run["metrics"],
                     minimal_run["cm"], minimal_run["roc"], minimal_run["history"])
    d1 = json.loads(p1["metrics"].read_text())
    d2 = json.loads(p2["metrics"].read_text())
    d1.pop("timestamp")
    d2.pop("timestamp")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)
    # csv and svg artifacts carry no timestamp at all
    assert p1["roc_csv"].read_bytes() == p2["roc_csv"].read_bytes()
    assert p1["confusion_svg"].read_bytes() == p2["confusion_svg"].read_bytes()


def test_report_without_roc_skips_roc_files(tmp_path, minimal_run):
    paths = emit_report(tmp_path, minimal_run["meta"], minimal_run["metrics"],
                        minimal_run["cm"], roc=None, loss_history=None)
    assert "roc_csv" not in paths
    assert "loss_svg" not in paths
    assert paths["metrics"].exists()
    payload = json.loads(paths["metrics"].read_text())
    assert payload["auc"] is None


def test_roc_csv_has_header_and_rows(tmp_path, minimal_run):
    paths = emit_report(tmp_path, minimal_run["meta"], minimal_run["metrics"],
                        minimal_run["cm"], minimal_run["roc"])
    lines = paths["roc_csv"].read_text().strip().splitlines()
    assert lines[0] == "threshold,fpr,tpr"
    assert len(lines) == len(minimal_run["roc"].fpr) + 1


def test_svg_output_is_wellformed_xml(tmp_path, minimal_run):
    import xml.etree.ElementTree as ET

    paths = emit_report(tmp_path, minimal_run["meta"], minimal_run["metrics"],
                        minimal_run["cm"], minimal_run["roc"], minimal_run["history"])
    for key in ("roc_svg", "confusion_svg", "loss_svg"):
        ET.fromstring(paths[key].read_text())


def test_svg_plots_embed_config_hash_and_seed(tmp_path, minimal_run):
    paths = emit_report(tmp_path, minimal_run["meta"], minimal_run["metrics"],
                        minimal_run["cm"], minimal_run["roc"], minimal_run["history"])
    for key in ("roc_svg", "confusion_svg", "loss_svg"):
        body = paths[key].read_text()
        assert "config deadbeef" in body and "seed 7" in body, key


def test_confusion_matrix_dataclass_total():
    assert ConfusionMatrix(tp=1, tn=2, fp=3, fn=4).total == 10
