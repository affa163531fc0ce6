"""Training losses: MSE and MSLE.

MSLE is the reconstruction-error measure used throughout the pipeline:
mean over all elements of (ln(1+y_true) - ln(1+y_pred))^2. The standalone
``msle`` function is strict about its non-negative domain; the training-loss
class clamps predictions at 0 first, because a linear output layer can dip
below zero mid-training while targets stay inside the scaled [0, 1] range.
"""

from __future__ import annotations

import numpy as np


def msle(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    """Mean squared logarithmic error over all elements.

    Raises ValueError if any element of either argument is negative.
    """
    y_true = np.asarray(y_true, dtype=float)
    y_pred = np.asarray(y_pred, dtype=float)
    if y_true.shape != y_pred.shape:
        raise ValueError(f"shape mismatch: {y_true.shape} vs {y_pred.shape}")
    if np.any(y_true < 0) or np.any(y_pred < 0):
        raise ValueError("msle requires non-negative inputs")
    d = np.log1p(y_true) - np.log1p(y_pred)
    return float(np.mean(d * d))


def mse(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    """Mean squared error over all elements."""
    y_true = np.asarray(y_true, dtype=float)
    y_pred = np.asarray(y_pred, dtype=float)
    if y_true.shape != y_pred.shape:
        raise ValueError(f"shape mismatch: {y_true.shape} vs {y_pred.shape}")
    d = y_true - y_pred
    return float(np.mean(d * d))


class Loss:
    """forward(y_pred, y_true) -> scalar; backward() -> grad w.r.t. y_pred."""

    name = "base"

    def forward(self, y_pred: np.ndarray, y_true: np.ndarray) -> float:
        raise NotImplementedError

    def backward(self) -> np.ndarray:
        raise NotImplementedError


class MSELoss(Loss):
    name = "mse"

    def __init__(self):
        self._cache = None

    def forward(self, y_pred, y_true):
        self._cache = (y_pred, y_true)
        return mse(y_true, y_pred)

    def backward(self):
        y_pred, y_true = self._cache
        return 2.0 * (y_pred - y_true) / y_pred.size


class MSLELoss(Loss):
    """MSLE with predictions clamped to [0, inf) before the log1p transform.

    The clamp contributes a zero subgradient wherever y_pred < 0.
    """

    name = "msle"

    def __init__(self):
        self._cache = None

    def forward(self, y_pred, y_true):
        if np.any(y_true < 0):
            raise ValueError("msle targets must be non-negative")
        clamped = np.maximum(y_pred, 0.0)
        d = np.log1p(clamped) - np.log1p(y_true)
        self._cache = (y_pred, clamped, d)
        return float(np.mean(d * d))

    def backward(self):
        y_pred, clamped, d = self._cache
        grad = 2.0 * d / ((1.0 + clamped) * d.size)
        return grad * (y_pred > 0)


_LOSSES = {"mse": MSELoss, "msle": MSLELoss}


def get_loss(name: str) -> Loss:
    try:
        return _LOSSES[name]()
    except KeyError:
        raise KeyError(f"unknown loss {name!r}; expected one of {sorted(_LOSSES)}") from None
