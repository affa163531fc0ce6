"""Reconstruction-error anomaly detection.

The detector scores each sample by its MSLE reconstruction error, fits a
cutoff of mean + 2 * population std over the training errors, and flags a
test sample as wildfire when its error reaches the cutoff (ties count as
wildfire). For the fully connected model a sample is one row; for the LSTM
model it is one window, with the error averaged over timesteps * features.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .autoencoder import Autoencoder


@dataclass
class Threshold:
    value: float
    mu: float
    sigma: float


def per_sample_errors(ae: Autoencoder, X: np.ndarray) -> np.ndarray:
    """Per-sample MSLE between X and its reconstruction.

    Reconstructions are clamped at 0 before the log1p transform so the
    linear output layer cannot push the error out of the MSLE domain.
    Returns one score per row (fc) or per window (lstm).
    """
    X = np.asarray(X, dtype=float)
    if X.size == 0:
        raise ValueError("cannot score an empty matrix")
    recon = np.maximum(ae.reconstruct(X), 0.0)
    d = np.log1p(X) - np.log1p(recon)
    axes = tuple(range(1, X.ndim))
    return np.mean(d * d, axis=axes)


def fit_threshold(train_errors: np.ndarray) -> Threshold:
    """Cutoff = mean + 2 * population standard deviation of training errors."""
    train_errors = np.asarray(train_errors, dtype=float)
    if train_errors.size == 0:
        raise ValueError("cannot fit a threshold on an empty error vector")
    if train_errors.size == 1:
        warnings.warn("fitting a threshold on a single error; sigma is 0")
    mu = float(np.mean(train_errors))
    sigma = float(np.std(train_errors))  # population std, no Bessel correction
    return Threshold(value=mu + 2.0 * sigma, mu=mu, sigma=sigma)


def classify(test_errors: np.ndarray, threshold: Threshold) -> np.ndarray:
    """1 where the error reaches the cutoff (boundary ties flag as wildfire)."""
    test_errors = np.asarray(test_errors, dtype=float)
    return (test_errors >= threshold.value).astype(int)
