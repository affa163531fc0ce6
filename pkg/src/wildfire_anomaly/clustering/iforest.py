"""Isolation forest built from scratch on flat node arrays.

Each tree partitions a seeded subsample with uniformly random (feature,
cut point) choices down to a height cap of ceil(log2(subsample size)).
The anomaly score is 2^(-E[h(x)] / c(m)): expected path length over the
forest, normalised by the average unsuccessful-search depth c(m) of a
binary search tree with m nodes, so scores live in (0, 1] and isolated
points score close to 1.

The decision offset is the training-score quantile implied by the
``contamination`` fraction; prediction flags scores strictly above it.
Ties among training scores are broken by sample index so the flagged
count is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

EULER_GAMMA = 0.5772156649015329


def average_path_length(m: float) -> float:
    """c(m): expected unsuccessful-search path length in a BST of m nodes."""
    if m <= 1:
        return 0.0
    if m == 2:
        return 1.0
    return 2.0 * (np.log(m - 1.0) + EULER_GAMMA) - 2.0 * (m - 1.0) / m


@dataclass
class IsolationTree:
    """Flat-array tree: feature < 0 marks a leaf holding ``size`` samples."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    size: np.ndarray

    def path_lengths(self, X: np.ndarray) -> np.ndarray:
        """Depth reached plus c(leaf size), vectorised over query rows."""
        node = np.zeros(len(X), dtype=np.intp)
        depth = np.zeros(len(X))
        active = self.feature[node] >= 0
        while np.any(active):
            idx = np.nonzero(active)[0]
            cur = node[idx]
            go_left = X[idx, self.feature[cur]] < self.threshold[cur]
            node[idx] = np.where(go_left, self.left[cur], self.right[cur])
            depth[idx] += 1.0
            active[idx] = self.feature[node[idx]] >= 0
        leaf_sizes = self.size[node]
        extra = np.array([average_path_length(s) for s in leaf_sizes])
        return depth + extra


@dataclass
class IsolationForestModel:
    trees: list[IsolationTree]
    n_estimators: int
    max_samples: float | int
    contamination: float
    seed: int
    subsample_size: int
    offset: float = 0.0
    train_scores: np.ndarray = field(default=None, repr=False)
    train_labels: np.ndarray = field(default=None, repr=False)
    n_features: int = 0


class _TreeBuilder:
    def __init__(self, X: np.ndarray, height_limit: int, rng: np.random.Generator):
        self.X = X
        self.height_limit = height_limit
        self.rng = rng
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.size: list[int] = []

    def build(self, idx: np.ndarray, depth: int) -> int:
        node = len(self.feature)
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.size.append(len(idx))
        if depth >= self.height_limit or len(idx) <= 1:
            return node
        sub = self.X[idx]
        spread = sub.max(axis=0) - sub.min(axis=0)
        candidates = np.nonzero(spread > 0)[0]
        if candidates.size == 0:
            return node  # all duplicate points: leaf
        q = int(self.rng.choice(candidates))
        col = sub[:, q]
        p = float(self.rng.uniform(col.min(), col.max()))
        mask = col < p
        self.feature[node] = q
        self.threshold[node] = p
        self.left[node] = self.build(idx[mask], depth + 1)
        self.right[node] = self.build(idx[~mask], depth + 1)
        return node

    def finish(self) -> IsolationTree:
        return IsolationTree(
            feature=np.asarray(self.feature, dtype=np.intp),
            threshold=np.asarray(self.threshold),
            left=np.asarray(self.left, dtype=np.intp),
            right=np.asarray(self.right, dtype=np.intp),
            size=np.asarray(self.size, dtype=np.intp),
        )


def _scores(trees: list[IsolationTree], X: np.ndarray, subsample_size: int) -> np.ndarray:
    depths = np.zeros(len(X))
    for tree in trees:
        depths += tree.path_lengths(X)
    mean_depth = depths / len(trees)
    return 2.0 ** (-mean_depth / average_path_length(subsample_size))


def rank_cutoff(scores: np.ndarray, contamination: float) -> tuple[np.ndarray, float]:
    """Flag the top round(contamination * n) scores; ties broken by index.

    Returns (labels, offset) where offset is the largest unflagged score so
    that strictly-greater comparison reproduces the same count on tie-free
    data. With k == n the offset drops below the minimum score.
    """
    n = len(scores)
    k = int(round(contamination * n))
    k = min(max(k, 0), n)
    order = np.lexsort((np.arange(n), -scores))  # by score desc, then index
    labels = np.zeros(n, dtype=int)
    labels[order[:k]] = 1
    if k == n:
        offset = float(scores.min()) - 1.0 if n else 0.0
    else:
        offset = float(scores[order[k]])
    return labels, offset


def iforest_fit(latent_train: np.ndarray, n_estimators: int = 200,
                max_samples: float | int = 0.9, contamination: float = 0.5,
                seed: int = 0) -> IsolationForestModel:
    """Grow the forest on seeded subsamples and fit the decision offset."""
    X = np.asarray(latent_train, dtype=float)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("latent_train must be a nonempty 2-D matrix")
    if not 0.0 < contamination <= 0.5:
        raise ValueError(f"contamination must be in (0, 0.5], got {contamination}")
    n = len(X)
    if isinstance(max_samples, float):
        if not 0.0 < max_samples <= 1.0:
            raise ValueError(f"max_samples fraction must be in (0, 1], got {max_samples}")
        subsample = max(1, int(max_samples * n))
    else:
        if max_samples < 1:
            raise ValueError(f"max_samples count must be >= 1, got {max_samples}")
        subsample = min(max_samples, n)

    height_limit = int(np.ceil(np.log2(max(subsample, 2))))
    seeds = np.random.SeedSequence(seed).spawn(n_estimators)
    trees = []
    for ss in seeds:
        rng = np.random.default_rng(ss)
        idx = rng.choice(n, size=subsample, replace=False)
        builder = _TreeBuilder(X, height_limit, rng)
        builder.build(idx, 0)
        trees.append(builder.finish())

    train_scores = _scores(trees, X, subsample)
    train_labels, offset = rank_cutoff(train_scores, contamination)
    return IsolationForestModel(
        trees=trees, n_estimators=n_estimators, max_samples=max_samples,
        contamination=contamination, seed=seed, subsample_size=subsample,
        offset=offset, train_scores=train_scores, train_labels=train_labels,
        n_features=X.shape[1],
    )


def iforest_scores(model: IsolationForestModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or (X.size and X.shape[1] != model.n_features):
        raise ValueError(
            f"expected (n, {model.n_features}) input, got shape {X.shape}")
    if len(X) == 0:
        return np.zeros(0)
    return _scores(model.trees, X, model.subsample_size)


def iforest_predict(model: IsolationForestModel, X: np.ndarray) -> np.ndarray:
    """1 for scores strictly above the fitted offset."""
    scores = iforest_scores(model, X)
    return (scores > model.offset).astype(int)
