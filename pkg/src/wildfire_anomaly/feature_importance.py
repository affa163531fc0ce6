"""Random-forest Gini importance (mean decrease in impurity).

The forest exists purely to rank features: 100 trees on bootstrap samples,
sqrt(d) feature candidates per split, Gini criterion, and a minimum of two
samples per leaf. Split thresholds are midpoints of consecutive distinct
sorted values; among equal-quality splits the lowest feature index (then
the lowest threshold) wins, which makes trees deterministic for a seed.

MDI attributes each split's weighted impurity decrease to its feature,
normalises within each tree, and averages across the forest, so the
reported importances are non-negative and sum to one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def gini_impurity(class_counts) -> float:
    """1 - sum(p_i^2) over class proportions."""
    counts = np.asarray(class_counts, dtype=float)
    if np.any(counts < 0):
        raise ValueError("class counts must be non-negative")
    total = counts.sum()
    if total <= 0:
        raise ValueError("class counts are all zero")
    p = counts / total
    return float(1.0 - np.sum(p * p))


@dataclass
class TreeNode:
    feature: int = -1            # -1 marks a leaf
    threshold: float = 0.0
    impurity: float = 0.0
    n_samples: int = 0
    class_counts: np.ndarray | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.feature < 0


@dataclass
class DecisionTree:
    root: TreeNode
    n_features: int

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.left)
                stack.append(node.right)


@dataclass
class RandomForest:
    trees: list[DecisionTree]
    n_features: int
    params: dict


@dataclass
class ImportanceReport:
    features: list[str]
    importances: np.ndarray
    ranking: list[int] = field(init=False)  # feature indices, most important first

    def __post_init__(self):
        self.ranking = list(np.argsort(-self.importances, kind="stable"))

    def ranked(self) -> list[tuple[str, float]]:
        return [(self.features[i], float(self.importances[i])) for i in self.ranking]


def _best_split(X, y, idx, features, min_leaf):
    """Best (feature, threshold, gain) over candidate features, or None."""
    n = len(idx)
    parent_counts = np.bincount(y[idx], minlength=2).astype(float)
    parent_gini = gini_impurity(parent_counts)
    best = None
    best_gain = 0.0
    for f in features:
        values = X[idx, f]
        order = np.argsort(values, kind="stable")
        sv = values[order]
        sy = y[idx][order]
        # cumulative positive counts left of each cut position
        cum_pos = np.cumsum(sy)
        pos_total = cum_pos[-1]
        cuts = np.arange(min_leaf, n - min_leaf + 1)
        if cuts.size == 0:
            continue
        cuts = cuts[sv[cuts - 1] < sv[cuts]]
        if cuts.size == 0:
            continue
        left_n = cuts.astype(float)
        left_pos = cum_pos[cuts - 1].astype(float)
        right_n = n - left_n
        right_pos = pos_total - left_pos
        gini_left = 1.0 - ((left_pos / left_n) ** 2 + ((left_n - left_pos) / left_n) ** 2)
        gini_right = 1.0 - ((right_pos / right_n) ** 2 + ((right_n - right_pos) / right_n) ** 2)
        child = (left_n * gini_left + right_n * gini_right) / n
        gains = parent_gini - child
        k = int(np.argmax(gains))
        if gains[k] > best_gain + 1e-12:
            cut = cuts[k]
            mid = (sv[cut - 1] + sv[cut]) / 2.0
            if mid >= sv[cut]:  # midpoint rounded up between adjacent floats
                mid = sv[cut - 1]
            best_gain = float(gains[k])
            best = (f, float(mid), best_gain)
    return best


def _make_node(y, idx) -> TreeNode:
    counts = np.bincount(y[idx], minlength=2)
    return TreeNode(
        impurity=gini_impurity(counts),
        n_samples=len(idx),
        class_counts=counts,
    )


def _grow(X, y, idx, rng, max_features, min_split, min_leaf) -> TreeNode:
    # explicit preorder stack (left subtree first): unbounded tree depth
    # without touching the interpreter recursion limit
    root = _make_node(y, idx)
    stack = [(root, idx)]
    while stack:
        node, node_idx = stack.pop()
        if len(node_idx) < max(min_split, 2 * min_leaf) or node.impurity == 0.0:
            continue
        candidates = np.sort(rng.choice(X.shape[1], size=max_features, replace=False))
        split = _best_split(X, y, node_idx, candidates, min_leaf)
        if split is None:
            continue
        f, threshold, _ = split
        node.feature = f
        node.threshold = threshold
        mask = X[node_idx, f] <= threshold
        left_idx, right_idx = node_idx[mask], node_idx[~mask]
        node.left = _make_node(y, left_idx)
        node.right = _make_node(y, right_idx)
        stack.append((node.right, right_idx))
        stack.append((node.left, left_idx))
    return root


def rf_fit(X, y, n_estimators: int = 100, min_samples_split: int = 2,
           min_samples_leaf: int = 2, max_features: int | None = None,
           seed: int = 0) -> RandomForest:
    """Fit the bootstrap forest; deterministic for a fixed seed."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.ndim != 2 or len(X) != len(y):
        raise ValueError("X must be 2-D with one label per row")
    classes = np.unique(y)
    if classes.size < 2:
        raise ValueError("y contains a single class; importance is undefined")
    if not np.all(np.isin(classes, (0, 1))):
        raise ValueError(f"y must be binary 0/1, found {classes}")
    y = y.astype(np.intp)
    d = X.shape[1]
    if max_features is None:
        max_features = max(1, int(np.sqrt(d)))
    max_features = min(max_features, d)

    trees = []
    n = len(X)
    for ss in np.random.SeedSequence(seed).spawn(n_estimators):
        rng = np.random.default_rng(ss)
        boot = rng.choice(n, size=n, replace=True)
        root = _grow(X, y, boot, rng, max_features, min_samples_split, min_samples_leaf)
        trees.append(DecisionTree(root=root, n_features=d))
    return RandomForest(trees=trees, n_features=d, params={
        "n_estimators": n_estimators,
        "criterion": "gini",
        "min_samples_split": min_samples_split,
        "min_samples_leaf": min_samples_leaf,
        "max_features": max_features,
        "seed": seed,
    })


def mdi_importance(forest: RandomForest, feature_names: list[str] | None = None) -> ImportanceReport:
    """Per-feature weighted impurity decrease, averaged over trees, sum 1."""
    d = forest.n_features
    if feature_names is None:
        feature_names = [f"feature_{i}" for i in range(d)]
    if len(feature_names) != d:
        raise ValueError(f"expected {d} feature names, got {len(feature_names)}")

    total = np.zeros(d)
    for tree in forest.trees:
        per_tree = np.zeros(d)
        n_root = tree.root.n_samples
        for node in tree.nodes():
            if node.is_leaf:
                continue
            decrease = (
                node.n_samples * node.impurity
                - node.left.n_samples * node.left.impurity
                - node.right.n_samples * node.right.impurity
            ) / n_root
            per_tree[node.feature] += decrease
        s = per_tree.sum()
        if s > 0:
            total += per_tree / s
    importances = total / len(forest.trees)
    s = importances.sum()
    if s > 0:
        importances = importances / s
    return ImportanceReport(features=list(feature_names), importances=importances)
