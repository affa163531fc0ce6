"""Non-overlapping sequence windows for the recurrent autoencoder.

Rows are grouped into consecutive windows in their existing order; any
trailing remainder shorter than the window is discarded, so the batch
dimension is floor(rows / window_length). Per-day labels collapse to one
label per window under a configurable rule (any fire day, majority, or
the window's last day).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_WINDOW = 10

WINDOW_LABEL_RULES = ("any", "majority", "last")


@dataclass
class SequenceTensor:
    data: np.ndarray          # (batch, window_length, features)
    window_length: int

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.data.shape

    def __len__(self) -> int:
        return len(self.data)


def window_sequences(matrix: np.ndarray, window_length: int = DEFAULT_WINDOW) -> SequenceTensor:
    """Stack consecutive non-overlapping windows of rows."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {matrix.shape}")
    if window_length < 1:
        raise ValueError(f"window_length must be >= 1, got {window_length}")
    rows, features = matrix.shape
    batch = rows // window_length
    if batch == 0:
        raise ValueError(
            f"matrix has {rows} rows, fewer than window_length {window_length}")
    used = batch * window_length
    data = matrix[:used].reshape(batch, window_length, features)
    return SequenceTensor(data=data, window_length=window_length)


def window_labels(labels: np.ndarray, window_length: int = DEFAULT_WINDOW,
                  rule: str = "any") -> np.ndarray:
    """One 0/1 label per window from the per-row labels."""
    if rule not in WINDOW_LABEL_RULES:
        raise ValueError(f"rule must be one of {WINDOW_LABEL_RULES}, got {rule!r}")
    labels = np.asarray(labels)
    batch = len(labels) // window_length
    if batch == 0:
        raise ValueError(
            f"{len(labels)} labels, fewer than window_length {window_length}")
    grouped = labels[: batch * window_length].reshape(batch, window_length)
    if rule == "any":
        return (grouped.max(axis=1) > 0).astype(int)
    if rule == "majority":
        return (grouped.sum(axis=1) * 2 > window_length).astype(int)
    return grouped[:, -1].astype(int)
