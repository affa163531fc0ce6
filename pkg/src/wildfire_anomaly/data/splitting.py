"""Train / validation / test split for nominal-only training.

All non-wildfire rows except a fixed holdout go to the training split; the
holdout is divided evenly between test and validation. Wildfire rows are
split near-evenly, then each half is down-sampled uniformly at random to a
fixed count so test and validation are not dwarfed by the class imbalance
(on the published data: 12,869 train rows and 715 + 1,000 rows in each of
test and validation). Rows are ordered by (region, date) before any
selection so later windowing never crosses a region boundary, and every
random draw comes from the single split seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .feature_sets import FeatureSet
from .scaling import MinMaxScaler
from .table import FeatureMatrix, RecordTable, select_features

NW_HOLDOUT = 1430        # non-wildfire rows reserved for test + validation
W_PER_EVAL_SPLIT = 1000  # wildfire rows kept in each of test and validation


class SplitConfigError(ValueError):
    """The table cannot support the requested split sizes."""


@dataclass
class SplitBundle:
    train: FeatureMatrix
    validation: FeatureMatrix
    test: FeatureMatrix
    seed: int
    dropped_wildfire_ids: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    scaler_mode: str = "unscaled"

    def manifest(self) -> dict:
        """Reproducibility manifest: seed plus row ids of every split."""
        return {
            "seed": self.seed,
            "feature_set": self.train.feature_set,
            "scaler_mode": self.scaler_mode,
            "counts": {
                "train": len(self.train),
                "validation": len(self.validation),
                "test": len(self.test),
                "dropped_wildfire": int(len(self.dropped_wildfire_ids)),
            },
            "row_ids": {
                "train": self.train.row_ids.tolist(),
                "validation": self.validation.row_ids.tolist(),
                "test": self.test.row_ids.tolist(),
                "dropped_wildfire": self.dropped_wildfire_ids.tolist(),
            },
        }


def split(table: RecordTable, seed: int, feature_set: FeatureSet,
          nw_holdout: int = NW_HOLDOUT,
          w_per_eval_split: int = W_PER_EVAL_SPLIT) -> SplitBundle:
    """Partition a labeled table into nominal-only train plus mixed eval splits."""
    if not table.is_labeled:
        raise ValueError("split requires a labeled table")
    if nw_holdout % 2 != 0:
        raise SplitConfigError(f"nw_holdout must be even, got {nw_holdout}")

    ordered = RecordTable(
        frame=table.frame.sort_values(["Region", "Date"], kind="stable")
        .reset_index(drop=True),
        load_report=table.load_report,
    )
    labels = ordered.labels
    nw_idx = np.nonzero(labels == 0)[0]
    w_idx = np.nonzero(labels == 1)[0]

    if len(nw_idx) <= nw_holdout:
        raise SplitConfigError(
            f"need more than {nw_holdout} non-wildfire rows "
            f"(holdout {nw_holdout} plus a nonempty train split), got {len(nw_idx)}")
    if len(w_idx) < 2 * w_per_eval_split:
        raise SplitConfigError(
            f"need at least {2 * w_per_eval_split} wildfire rows, got {len(w_idx)}")

    rng = np.random.default_rng(seed)

    nw_shuffled = rng.permutation(nw_idx)
    holdout = nw_shuffled[:nw_holdout]
    test_nw = np.sort(holdout[: nw_holdout // 2])
    val_nw = np.sort(holdout[nw_holdout // 2:])
    train_nw = np.sort(nw_shuffled[nw_holdout:])

    w_shuffled = rng.permutation(w_idx)
    half = len(w_idx) // 2
    test_w_pool, val_w_pool = w_shuffled[:half], w_shuffled[half:]
    test_w = np.sort(test_w_pool[:w_per_eval_split])
    val_w = np.sort(val_w_pool[:w_per_eval_split])
    dropped = np.sort(np.concatenate([
        test_w_pool[w_per_eval_split:], val_w_pool[w_per_eval_split:]]))

    full = select_features(ordered, feature_set)

    def view(ids: np.ndarray) -> FeatureMatrix:
        return FeatureMatrix(
            values=full.values[ids],
            columns=full.columns,
            feature_set=full.feature_set,
            row_ids=ids,
            labels=labels[ids],
        )

    return SplitBundle(
        train=view(train_nw),
        validation=view(np.sort(np.concatenate([val_nw, val_w]))),
        test=view(np.sort(np.concatenate([test_nw, test_w]))),
        seed=seed,
        dropped_wildfire_ids=dropped,
    )


def scale_per_split(bundle: SplitBundle, mode: str = "per_split") -> SplitBundle:
    """Min-max scale each split.

    ``per_split`` fits a scaler on each split's own statistics (the default,
    matching the source procedure); ``train_fit`` fits on train only and
    applies it everywhere, the orthodox alternative.
    """
    if mode not in ("per_split", "train_fit"):
        raise ValueError(f"scaler_mode must be per_split or train_fit, got {mode!r}")

    train_scaler = MinMaxScaler().fit(bundle.train.values)

    def scaled(fm: FeatureMatrix) -> FeatureMatrix:
        scaler = train_scaler if mode == "train_fit" else MinMaxScaler().fit(fm.values)
        return FeatureMatrix(
            values=scaler.transform(fm.values),
            columns=fm.columns,
            feature_set=fm.feature_set,
            row_ids=fm.row_ids,
            labels=fm.labels,
            scaler_stats=scaler.stats(),
        )

    return SplitBundle(
        train=scaled(bundle.train),
        validation=scaled(bundle.validation),
        test=scaled(bundle.test),
        seed=bundle.seed,
        dropped_wildfire_ids=bundle.dropped_wildfire_ids,
        scaler_mode=mode,
    )
