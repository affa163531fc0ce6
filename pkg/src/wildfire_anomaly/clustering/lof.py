"""Local outlier factor scored against a fixed training set.

Follows the standard construction: k-distance neighbourhoods (every point
within the k-th neighbour's distance, so ties can widen the set),
reachability distances reach(p, o) = max(kdist(o), d(p, o)), local
reachability density as the inverse mean reachability, and the LOF score
as the neighbours' mean lrd over the point's own lrd. Scores near 1 mean
the point sits in a neighbourhood of similar density; well above 1 means
an outlier.

Training points are scored leave-self-out; query points are scored against
the full training set. Distance matrices are computed in row chunks so the
training-side kNN never materialises an n x n matrix. Duplicate points can
drive reachability to zero; lrd is capped at 1e12 to keep ratios finite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .iforest import rank_cutoff

LRD_CAP = 1e12
_CHUNK_ELEMENTS = 2 ** 24  # cap the chunk x train x dim broadcast at ~134 MB

METRICS = ("euclidean", "manhattan", "minkowski")


def _chunk_rows(n_train: int, dim: int) -> int:
    return max(1, _CHUNK_ELEMENTS // max(n_train * dim, 1))


def pairwise_distances(A: np.ndarray, B: np.ndarray, metric: str, p: float = 3.0) -> np.ndarray:
    """Dense |A| x |B| distance matrix for the supported metric family."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    diff = A[:, None, :] - B[None, :, :]
    if metric == "euclidean":
        return np.sqrt(np.sum(diff * diff, axis=-1))
    if metric == "manhattan":
        return np.sum(np.abs(diff), axis=-1)
    if metric == "minkowski":
        return np.sum(np.abs(diff) ** p, axis=-1) ** (1.0 / p)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


@dataclass
class LOFModel:
    k: int
    metric: str
    p: float
    contamination: float
    train: np.ndarray
    kdist: np.ndarray          # k-distance of each training point (self excluded)
    lrd: np.ndarray            # local reachability density of each training point
    train_scores: np.ndarray   # leave-self-out LOF of each training point
    train_labels: np.ndarray
    cutoff: float


def _knn_of_train(train: np.ndarray, k: int, metric: str, p: float):
    """k-distance and neighbour lists for every training point, self excluded."""
    n = len(train)
    chunk = _chunk_rows(n, train.shape[1])
    kdist = np.empty(n)
    neighbours: list[np.ndarray] = []
    dists_to_neigh: list[np.ndarray] = []
    for start in range(0, n, chunk):
        rows = slice(start, min(start + chunk, n))
        d = pairwise_distances(train[rows], train, metric, p)
        for i in range(d.shape[0]):
            gi = start + i
            drow = d[i].copy()
            drow[gi] = np.inf  # exclude self
            kth = np.partition(drow, k - 1)[k - 1]
            kdist[gi] = kth
            mask = drow <= kth
            idx = np.nonzero(mask)[0]
            neighbours.append(idx)
            dists_to_neigh.append(drow[idx])
    return kdist, neighbours, dists_to_neigh


def _lrd(dists: np.ndarray, neigh_idx: np.ndarray, kdist: np.ndarray) -> float:
    reach = np.maximum(kdist[neigh_idx], dists)
    mean_reach = reach.mean()
    if mean_reach <= 0:
        return LRD_CAP
    return min(1.0 / mean_reach, LRD_CAP)


def lof_fit(latent_train: np.ndarray, k: int = 8, metric: str = "manhattan",
            p: float = 3.0, contamination: float = 0.5) -> LOFModel:
    """Precompute training k-distances, lrd values, and the score cutoff."""
    train = np.asarray(latent_train, dtype=float)
    if train.ndim != 2 or len(train) == 0:
        raise ValueError("latent_train must be a nonempty 2-D matrix")
    if not 1 <= k < len(train):
        raise ValueError(f"k must satisfy 1 <= k < {len(train)}, got {k}")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")

    kdist, neighbours, dists = _knn_of_train(train, k, metric, p)
    n = len(train)
    lrd = np.empty(n)
    for i in range(n):
        lrd[i] = _lrd(dists[i], neighbours[i], kdist)
    train_scores = np.empty(n)
    for i in range(n):
        train_scores[i] = lrd[neighbours[i]].mean() / lrd[i]
    train_labels, cutoff = rank_cutoff(train_scores, contamination)
    return LOFModel(k=k, metric=metric, p=p, contamination=contamination,
                    train=train, kdist=kdist, lrd=lrd,
                    train_scores=train_scores, train_labels=train_labels,
                    cutoff=cutoff)


def lof_scores(model: LOFModel, X: np.ndarray) -> np.ndarray:
    """LOF of query points measured against the training set."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or (X.size and X.shape[1] != model.train.shape[1]):
        raise ValueError(
            f"expected (n, {model.train.shape[1]}) input, got shape {X.shape}")
    if len(X) == 0:
        return np.zeros(0)
    scores = np.empty(len(X))
    k = model.k
    chunk = _chunk_rows(len(model.train), model.train.shape[1])
    for start in range(0, len(X), chunk):
        rows = slice(start, min(start + chunk, len(X)))
        d = pairwise_distances(X[rows], model.train, model.metric, model.p)
        for i in range(d.shape[0]):
            drow = d[i]
            kth = np.partition(drow, k - 1)[k - 1]
            idx = np.nonzero(drow <= kth)[0]
            x_lrd = _lrd(drow[idx], idx, model.kdist)
            scores[start + i] = model.lrd[idx].mean() / x_lrd
    return scores


def lof_predict(model: LOFModel, X: np.ndarray) -> np.ndarray:
    """1 for scores strictly above the fitted training quantile."""
    return (lof_scores(model, X) > model.cutoff).astype(int)


def lof_fit_predict(latent_train: np.ndarray, latent_X: np.ndarray, k: int = 8,
                    metric: str = "manhattan", p: float = 3.0,
                    contamination: float = 0.5) -> np.ndarray:
    """Fit on the training set and label the query set in one call."""
    model = lof_fit(latent_train, k=k, metric=metric, p=p, contamination=contamination)
    return lof_predict(model, latent_X)
