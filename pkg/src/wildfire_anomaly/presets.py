"""Named experiment presets.

Each preset pins the hyperparameters of one published configuration so a
run can be reproduced from a single name: the two fully connected
reconstruction models, the recurrent model, the three latent-clustering
detectors (with their reported parameter variants), and the
feature-importance forest. A golden test asserts these values never
drift.
"""

from __future__ import annotations

import copy

FC_UNITS = [512, 256, 128, 64, 32]
LSTM_UNITS = [256, 128, 64, 32, 16]
CLUSTER_BOTTLENECK = 8

PRESETS: dict[str, dict] = {
    # reconstruction-error detectors
    "fc-model-a": {
        "pipeline": "recon_fc",
        "model": {
            "kind": "fc",
            "encoder_units": FC_UNITS,
            "activation": "relu",
        },
        "train": {"epochs": 400, "batch_size": 128, "patience": 20, "loss": "msle"},
        "optimizer": {"kind": "adam", "schedule": "cyclical"},
    },
    "fc-model-b": {
        "pipeline": "recon_fc",
        "model": {
            "kind": "fc",
            "encoder_units": FC_UNITS,
            "activation": "relu",
        },
        "train": {"epochs": 400, "batch_size": 32, "patience": 20, "loss": "msle"},
        "optimizer": {"kind": "rmsprop", "schedule": "none"},
    },
    "lstm-final": {
        "pipeline": "recon_lstm",
        "model": {
            "kind": "lstm",
            "encoder_units": LSTM_UNITS,
            "activation": "tanh",
            "window_length": 10,
        },
        "train": {"epochs": 200, "batch_size": 32, "patience": 20, "loss": "msle"},
        "optimizer": {"kind": "adam", "schedule": "none"},
    },
    # latent clustering detectors (trained on an 8-d bottleneck encoder)
    "iforest": {
        "pipeline": "cluster_iforest",
        "detector": {"n_estimators": 200, "max_samples": 0.9, "contamination": 0.5},
    },
    "iforest-a": {
        "pipeline": "cluster_iforest",
        "detector": {"n_estimators": 100, "max_samples": 0.9, "contamination": 0.5},
    },
    "iforest-b": {
        "pipeline": "cluster_iforest",
        "detector": {"n_estimators": 100, "max_samples": 0.9, "contamination": 0.2},
    },
    "lof": {
        "pipeline": "cluster_lof",
        "detector": {"k": 8, "contamination": 0.5, "metric": "manhattan"},
    },
    "lof-c": {
        "pipeline": "cluster_lof",
        "detector": {"k": 20, "contamination": 0.5, "metric": "manhattan"},
    },
    "lof-d": {
        "pipeline": "cluster_lof",
        "detector": {"k": 12, "contamination": 0.3, "metric": "manhattan"},
    },
    "ocsvm": {
        "pipeline": "cluster_ocsvm",
        "detector": {"kernel": "linear", "nu": 0.6},
    },
    "ocsvm-e": {
        "pipeline": "cluster_ocsvm",
        "detector": {"kernel": "rbf", "nu": 0.6},
    },
    "ocsvm-f": {
        "pipeline": "cluster_ocsvm",
        "detector": {"kernel": "rbf", "nu": 0.3},
    },
    # feature-importance screen
    "importance": {
        "pipeline": "importance",
        "forest": {
            "n_estimators": 100,
            "min_samples_split": 2,
            "min_samples_leaf": 2,
        },
    },
}

# dataset-variant presets share hyperparameters but pin the feature set
PRESETS["paper-dataset1"] = {"feature_set": "Dataset1"}
PRESETS["paper-dataset2"] = {"feature_set": "Dataset2"}


def get_preset(name: str) -> dict:
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; expected one of {sorted(PRESETS)}"
        ) from None
