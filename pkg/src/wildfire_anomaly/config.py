"""Run configuration: JSON config files, preset merging, and hashing.

A run is fully described by one nested dict. Configs resolve in layers:
built-in defaults, then a JSON config file, then a named preset, then
explicit overrides (CLI flags). The sha256 hash of the resolved config is
embedded in every artifact so outputs are traceable to their inputs.
"""

from __future__ import annotations

import copy
import hashlib
import json
import os
from pathlib import Path

DATA_DIR_ENV = "WILDFIRE_DATA_DIR"

DEFAULTS: dict = {
    "dataset": {
        "weather": "weather.csv",
        "ndvi": "ndvi.csv",
        "wildfire": "wildfire.csv",
        "synthetic": False,
    },
    "feature_set": "Dataset1",
    "seed": None,  # every run must state its seed explicitly
    "pipeline": "recon_fc",
    "scaler_mode": "per_split",
    "window_length": 10,
    "window_label_rule": "any",
    "model": {
        "kind": "fc",
        "encoder_units": [512, 256, 128, 64, 32],
        "bottleneck": 0,
        "activation": "",
        "window_length": 10,
    },
    "train": {
        "epochs": 400,
        "batch_size": 128,
        "patience": 20,
        "loss": "msle",
        "clip_norm": 5.0,
    },
    "optimizer": {
        "kind": "adam",
        "learning_rate": 1e-3,
        "schedule": "none",
        "schedule_params": {},
    },
    "detector": {},
    "forest": {
        "n_estimators": 100,
        "min_samples_split": 2,
        "min_samples_leaf": 2,
    },
    "out_dir": "runs",
}

PIPELINES = ("recon_fc", "recon_lstm", "cluster_iforest", "cluster_lof",
             "cluster_ocsvm", "importance")


def _merge(base: dict, overlay: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def resolve_config(config_path=None, preset: str | None = None,
                   overrides: dict | None = None) -> dict:
    """Layer defaults <- preset <- config file <- overrides.

    A preset is a named baseline; the config file then refines it, and
    explicit overrides (CLI flags) always win.
    """
    from .presets import get_preset

    config = copy.deepcopy(DEFAULTS)
    if preset:
        config = _merge(config, get_preset(preset))
        config["preset"] = preset
        # cluster pipelines train the encoder with a narrow bottleneck
        if config["pipeline"].startswith("cluster"):
            config["model"]["bottleneck"] = config["model"].get("bottleneck") or 8
    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise FileNotFoundError(f"config file not found: {path}")
        config = _merge(config, json.loads(path.read_text()))
    if overrides:
        config = _merge(config, {k: v for k, v in overrides.items() if v is not None})
    if config["seed"] is None:
        raise ValueError("seed is required: pass --seed or set it in the config file")
    if config["pipeline"] not in PIPELINES:
        raise ValueError(
            f"unknown pipeline {config['pipeline']!r}; expected one of {PIPELINES}")
    if config["pipeline"].startswith("cluster") and not config["model"].get("bottleneck"):
        config["model"]["bottleneck"] = 8
    if config["pipeline"] == "recon_lstm":
        config["model"]["kind"] = "lstm"
    return config


def config_hash(config: dict) -> str:
    """Stable short hash over everything that affects results."""
    hashable = {k: v for k, v in config.items() if k != "out_dir"}
    canonical = json.dumps(hashable, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def dataset_paths(config: dict) -> dict[str, Path]:
    """Dataset file paths, resolved against the cache directory env var."""
    base = Path(os.environ.get(DATA_DIR_ENV, "."))
    ds = config["dataset"]
    return {name: Path(ds[name]) if Path(ds[name]).is_absolute()
            else base / ds[name]
            for name in ("weather", "ndvi", "wildfire")}
