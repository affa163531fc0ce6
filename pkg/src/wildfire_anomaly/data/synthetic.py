"""Bundled synthetic dataset so the pipeline runs without the real data.

Nominal rows are a correlated Gaussian squashed into [0, 1] per feature;
anomalous rows shift every feature by three of its standard deviations
before squashing, which puts them well off the nominal manifold while
staying inside the unit box. Two surfaces are provided: raw train/test
arrays for benchmarking the reconstruction detector, and a trio of CSV
frames shaped exactly like the real sources for driving the full CLI.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .feature_sets import DATASET1_COLUMNS, FIRE_AREA_COLUMN, REGIONS

_CENTER = 0.5
_SIGMA = 0.08
_SHIFT_SIGMAS = 3.0


def _correlation_root(rng: np.random.Generator, dim: int) -> np.ndarray:
    """A random mixing matrix giving correlated unit-variance features."""
    mix = rng.normal(size=(dim, dim)) / np.sqrt(dim)
    cov = mix @ mix.T + 0.5 * np.eye(dim)
    scale = np.sqrt(np.diag(cov))
    return np.linalg.cholesky(cov / np.outer(scale, scale))


def _draw(rng: np.random.Generator, root: np.ndarray, n: int,
          shifted: bool) -> np.ndarray:
    dim = root.shape[0]
    z = rng.normal(size=(n, dim)) @ root.T
    if shifted:
        z = z + _SHIFT_SIGMAS
    return np.clip(_CENTER + _SIGMA * z, 0.0, 1.0)


@dataclass
class ReconstructionBenchmark:
    train: np.ndarray
    test: np.ndarray
    test_labels: np.ndarray


def make_reconstruction_benchmark(seed: int, n_train: int = 2000,
                                  n_test: int = 600,
                                  anomaly_fraction: float = 0.1,
                                  n_features: int = 28) -> ReconstructionBenchmark:
    """Nominal-only train plus a mixed test set with the given anomaly share."""
    rng = np.random.default_rng(seed)
    root = _correlation_root(rng, n_features)
    n_anom = int(round(anomaly_fraction * n_test))
    train = _draw(rng, root, n_train, shifted=False)
    test_nominal = _draw(rng, root, n_test - n_anom, shifted=False)
    test_anom = _draw(rng, root, n_anom, shifted=True)
    test = np.vstack([test_nominal, test_anom])
    labels = np.concatenate([np.zeros(n_test - n_anom, dtype=int),
                             np.ones(n_anom, dtype=int)])
    order = rng.permutation(n_test)
    return ReconstructionBenchmark(train=train, test=test[order],
                                   test_labels=labels[order])


def make_synthetic_sources(seed: int, n_nominal: int = 3430,
                           n_anomalous: int = 2200) -> dict[str, pd.DataFrame]:
    """Weather, NDVI, and wildfire frames with the real CSV schema.

    Row counts default to just above the split minimums (1,430 holdout
    non-wildfire rows, 2,000 wildfire rows) so the standard split procedure
    works unchanged. Days are distributed over the seven regions on a
    continuous calendar per region.
    """
    rng = np.random.default_rng(seed)
    total = n_nominal + n_anomalous
    root = _correlation_root(rng, len(DATASET1_COLUMNS))

    fire = np.zeros(total, dtype=int)
    fire[rng.choice(total, size=n_anomalous, replace=False)] = 1
    features = np.empty((total, len(DATASET1_COLUMNS)))
    features[fire == 0] = _draw(rng, root, n_nominal, shifted=False)
    features[fire == 1] = _draw(rng, root, n_anomalous, shifted=True)

    per_region = -(-total // len(REGIONS))  # ceil
    start = _dt.date(2005, 1, 1)
    dates, regions = [], []
    for i in range(total):
        regions.append(REGIONS[i // per_region])
        dates.append((start + _dt.timedelta(days=i % per_region)).isoformat())

    base = pd.DataFrame({"Date": dates, "Region": regions})
    weather_cols = [c for c in DATASET1_COLUMNS if not c.startswith("Vegetation")]
    ndvi_cols = [c for c in DATASET1_COLUMNS if c.startswith("Vegetation")]
    col_index = {c: k for k, c in enumerate(DATASET1_COLUMNS)}

    weather = base.copy()
    for c in weather_cols:
        weather[c] = features[:, col_index[c]]
    ndvi = base.copy()
    for c in ndvi_cols:
        ndvi[c] = features[:, col_index[c]]
    wildfire = base.copy()
    wildfire[FIRE_AREA_COLUMN] = fire * rng.uniform(1.0, 500.0, size=total)

    return {"weather": weather, "ndvi": ndvi, "wildfire": wildfire}


def write_synthetic_sources(out_dir, seed: int, **kwargs) -> dict[str, str]:
    """Write the three CSVs and return their paths."""
    from pathlib import Path

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    frames = make_synthetic_sources(seed, **kwargs)
    paths = {}
    for name, frame in frames.items():
        path = out_dir / f"{name}.csv"
        frame.to_csv(path, index=False)
        paths[name] = str(path)
    return paths
