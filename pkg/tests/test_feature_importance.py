import os
from pathlib import Path

import numpy as np
import pytest

from wildfire_anomaly.feature_importance import (
    gini_impurity,
    mdi_importance,
    rf_fit,
)


class TestGini:
    def test_pure_node_is_zero(self):
        assert gini_impurity([10, 0]) == 0.0

    def test_even_split(self):
        assert gini_impurity([5, 5]) == pytest.approx(0.5)

    def test_hand_value(self):
        # (1, 3): 1 - (0.0625 + 0.5625) = 0.375
        assert gini_impurity([1, 3]) == pytest.approx(0.375)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            gini_impurity([0, 0])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gini_impurity([-1, 3])


def separable_data(seed=0, n=200, d=5):
    """Label fully determined by feature 0 crossing a cut."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(size=(n, d))
    y = (X[:, 0] > 0.5).astype(int)
    return X, y


class TestForest:
    def test_separable_feature_dominates_importance(self):
        X, y = separable_data()
        # all features in play: the root always finds the separating cut,
        # children are pure, so the full MDI mass lands on feature 0
        forest = rf_fit(X, y, n_estimators=30, max_features=5, seed=1)
        report = mdi_importance(forest)
        assert report.importances[0] > 0.9
        assert report.ranking[0] == 0
        # with sqrt(d) candidates some nodes only see noise features, which
        # dilutes but cannot displace the separating feature
        diluted = mdi_importance(rf_fit(X, y, n_estimators=30, seed=1))
        assert diluted.importances[0] > 0.8
        assert diluted.ranking[0] == 0

    def test_pure_noise_importances_near_uniform(self):
        rng = np.random.default_rng(2)
        totals = np.zeros(5)
        for seed in range(20):
            X = rng.uniform(size=(500, 5))
            y = rng.integers(0, 2, size=500)
            forest = rf_fit(X, y, n_estimators=10, seed=seed)
            totals += mdi_importance(forest).importances
        assert totals.max() / totals.min() < 3.0

    def test_determinism(self):
        X, y = separable_data(seed=3)
        r1 = mdi_importance(rf_fit(X, y, n_estimators=15, seed=9))
        r2 = mdi_importance(rf_fit(X, y, n_estimators=15, seed=9))
        np.testing.assert_array_equal(r1.importances, r2.importances)

    def test_single_class_rejected(self):
        X = np.random.default_rng(4).uniform(size=(20, 3))
        with pytest.raises(ValueError):
            rf_fit(X, np.zeros(20, dtype=int))

    def test_min_samples_leaf_respected(self):
        X, y = separable_data(seed=5, n=150)
        forest = rf_fit(X, y, n_estimators=10, min_samples_leaf=2, seed=5)
        for tree in forest.trees:
            for node in tree.nodes():
                if node.is_leaf:
                    assert node.n_samples >= 2

    def test_child_impurity_never_increases(self):
        X, y = separable_data(seed=6, n=150)
        forest = rf_fit(X, y, n_estimators=10, seed=6)
        for tree in forest.trees:
            for node in tree.nodes():
                if node.is_leaf:
                    continue
                weighted = (node.left.n_samples * node.left.impurity
                            + node.right.n_samples * node.right.impurity)
                assert weighted / node.n_samples <= node.impurity + 1e-12


class TestMDI:
    def test_stump_forest_importance_is_one_hot(self):
        # force every split onto feature 2 by making the others constant
        rng = np.random.default_rng(7)
        X = np.zeros((100, 4))
        X[:, 2] = rng.uniform(size=100)
        y = (X[:, 2] > 0.5).astype(int)
        forest = rf_fit(X, y, n_estimators=10, max_features=4, seed=8)
        report = mdi_importance(forest)
        expected = np.zeros(4)
        expected[2] = 1.0
        np.testing.assert_allclose(report.importances, expected, atol=1e-12)

    def test_importances_are_normalised(self):
        X, y = separable_data(seed=9)
        report = mdi_importance(rf_fit(X, y, n_estimators=20, seed=10))
        assert report.importances.sum() == pytest.approx(1.0, abs=1e-9)
        assert np.all(report.importances >= 0.0)

    def test_duplicated_top_feature_splits_its_mass(self):
        X, y = separable_data(seed=11, n=300, d=4)
        solo = mdi_importance(rf_fit(X, y, n_estimators=20, seed=12)).importances[0]
        X_dup = np.column_stack([X, X[:, 0]])  # exact copy of feature 0
        dup_report = mdi_importance(rf_fit(X_dup, y, n_estimators=20, seed=12))
        combined = dup_report.importances[0] + dup_report.importances[4]
        assert combined >= 0.8 * solo

    def test_feature_names_attached(self):
        X, y = separable_data(seed=13, d=3)
        report = mdi_importance(rf_fit(X, y, n_estimators=5, seed=13),
                                feature_names=["a", "b", "c"])
        assert report.ranked()[0][0] == "a"
        with pytest.raises(ValueError):
            mdi_importance(rf_fit(X, y, n_estimators=5, seed=13),
                           feature_names=["too", "few"])


def _real_data_dir():
    base = Path(os.environ.get("WILDFIRE_DATA_DIR", "data"))
    names = ["weather.csv", "ndvi.csv", "wildfire.csv"]
    return base if all((base / n).exists() for n in names) else None


@pytest.mark.skipif(_real_data_dir() is None,
                    reason="real dataset not found (WILDFIRE_DATA_DIR)")
def test_known_weak_features_rank_low_on_real_data():
    from wildfire_anomaly.data import DATASET1, label_table, load_tables, select_features

    base = _real_data_dir()
    table = label_table(load_tables(base / "weather.csv", base / "ndvi.csv",
                                    base / "wildfire.csv"))
    fm = select_features(table, DATASET1)
    forest = rf_fit(fm.values, fm.labels, n_estimators=100, seed=0)
    report = mdi_importance(forest, feature_names=fm.columns)
    bottom_half = {name for name, _ in report.ranked()[14:]}
    weak = {"Vegetation_index_Min", "WindSpeed_Mean", "WindSpeed_Variance"}
    assert weak <= bottom_half
