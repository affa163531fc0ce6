"""PCA projection used only to visualise latent features in 3-D.

Columns are centred, principal axes come from the SVD of the centred
matrix, and component signs are fixed (largest-magnitude loading positive)
so projections are deterministic. When the data rank falls short of the
requested dimension the trailing components are zero vectors and a warning
is raised; explained-variance ratios are returned alongside.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass
class PCAResult:
    coordinates: np.ndarray     # (n, out_dim)
    components: np.ndarray      # (out_dim, n_features), orthonormal rows
    explained_variance_ratio: np.ndarray
    mean: np.ndarray


def pca_project(X: np.ndarray, out_dim: int = 3) -> PCAResult:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("X must be a nonempty 2-D matrix")
    n, d = X.shape
    if not 1 <= out_dim <= d:
        raise ValueError(f"out_dim must be in [1, {d}], got {out_dim}")

    mean = X.mean(axis=0)
    centred = X - mean
    _, s, vt = np.linalg.svd(centred, full_matrices=False)

    var = s * s
    total_var = var.sum()
    rank_tol = max(n, d) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > rank_tol))

    components = np.zeros((out_dim, d))
    usable = min(out_dim, rank)
    components[:usable] = vt[:usable]
    if usable < out_dim:
        warnings.warn(
            f"data rank {rank} < requested {out_dim} components; "
            "trailing components zero-padded")

    # deterministic orientation: largest-|loading| entry made positive
    for row in components[:usable]:
        pivot = np.argmax(np.abs(row))
        if row[pivot] < 0:
            row *= -1.0

    ratios = np.zeros(out_dim)
    if total_var > 0:
        ratios[:usable] = var[:usable] / total_var
    return PCAResult(
        coordinates=centred @ components.T,
        components=components,
        explained_variance_ratio=ratios,
        mean=mean,
    )
