import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wildfire_anomaly.autoencoder import AutoencoderSpec, build
from wildfire_anomaly.threshold_detector import (
    Threshold,
    classify,
    fit_threshold,
    per_sample_errors,
)

E = math.e


class TestPerSampleErrors:
    def test_perfect_reconstruction_gives_zeros(self):
        # identity-weight single-layer autoencoder reproduces its input
        ae = build(AutoencoderSpec(kind="fc", input_dim=3, encoder_units=[3]))
        for layer in ae.network.layers:
            layer.W.value[...] = 0.0
            layer.b.value[...] = 0.0
        ae.network.layers[0].W.value[...] = np.eye(3)
        ae.network.layers[1].W.value[...] = np.eye(3)
        X = np.random.default_rng(0).uniform(size=(5, 3))
        np.testing.assert_allclose(per_sample_errors(ae, X), 0.0, atol=1e-15)

    def test_hand_msle_single_row(self):
        # y=[0,0], y_hat=[e-1,0] -> mean of {1, 0} = 0.5
        ae = build(AutoencoderSpec(kind="fc", input_dim=2, encoder_units=[2]))
        ae.network.layers[0].W.value[...] = 0.0
        ae.network.layers[0].b.value[...] = 0.0
        ae.network.layers[1].W.value[...] = 0.0
        ae.network.layers[1].b.value[...] = [E - 1.0, 0.0]
        errors = per_sample_errors(ae, np.zeros((1, 2)))
        assert errors[0] == pytest.approx(0.5, abs=1e-12)

    def test_lstm_windows_give_one_score_each(self):
        ae = build(AutoencoderSpec(kind="lstm", input_dim=4,
                                   encoder_units=[5, 3], window_length=6))
        X = np.random.default_rng(1).uniform(size=(9, 6, 4))
        assert per_sample_errors(ae, X).shape == (9,)

    def test_empty_input_rejected(self):
        ae = build(AutoencoderSpec(kind="fc", input_dim=2, encoder_units=[2]))
        with pytest.raises(ValueError):
            per_sample_errors(ae, np.zeros((0, 2)))


class TestFitThreshold:
    def test_constant_errors_give_zero_sigma(self):
        t = fit_threshold(np.full(10, E))
        assert t.sigma == 0.0
        assert t.value == pytest.approx(E, abs=1e-15)

    def test_hand_two_values(self):
        # {0, 2}: mu=1, population sigma=1, threshold=3
        t = fit_threshold(np.array([0.0, 2.0]))
        assert (t.mu, t.sigma, t.value) == (1.0, 1.0, 3.0)

    def test_hand_four_values(self):
        # {1,1,1,5}: mu=2, sigma=sqrt(3), threshold = 2 + 2*sqrt(3)
        t = fit_threshold(np.array([1.0, 1.0, 1.0, 5.0]))
        assert t.mu == pytest.approx(2.0, abs=1e-12)
        assert t.sigma == pytest.approx(math.sqrt(3.0), abs=1e-12)
        assert t.value == pytest.approx(2.0 + 2.0 * math.sqrt(3.0), abs=1e-12)

    def test_single_element_warns(self):
        with pytest.warns(UserWarning):
            t = fit_threshold(np.array([0.7]))
        assert t.value == pytest.approx(0.7)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            fit_threshold(np.array([]))

    @given(st.lists(st.floats(min_value=1e-6, max_value=1e3), min_size=2, max_size=50),
           st.floats(min_value=0.01, max_value=100.0))
    def test_scale_equivariance(self, errors, c):
        base = fit_threshold(np.array(errors))
        scaled = fit_threshold(np.array(errors) * c)
        assert scaled.value == pytest.approx(base.value * c, rel=1e-9)


class TestClassify:
    def test_boundary_tie_is_wildfire(self):
        t = Threshold(value=3.0, mu=1.0, sigma=1.0)
        assert classify(np.array([3.0]), t).tolist() == [1]

    def test_all_below_threshold(self):
        t = Threshold(value=10.0, mu=0.0, sigma=5.0)
        assert classify(np.array([0.1, 9.99, 5.0]), t).tolist() == [0, 0, 0]

    def test_hand_pair(self):
        t = Threshold(value=3.0, mu=0.0, sigma=1.5)
        assert classify(np.array([0.1, 3.5]), t).tolist() == [0, 1]

    def test_monotone_in_threshold(self):
        rng = np.random.default_rng(8)
        errors = rng.exponential(size=200)
        flagged_low = classify(errors, Threshold(1.0, 0, 0)).sum()
        flagged_high = classify(errors, Threshold(2.0, 0, 0)).sum()
        assert flagged_high <= flagged_low
        # raising the cutoff never converts a 0 into a 1
        low = classify(errors, Threshold(1.0, 0, 0))
        high = classify(errors, Threshold(2.0, 0, 0))
        assert not np.any((low == 0) & (high == 1))

    def test_gaussian_like_training_errors_rarely_flagged(self):
        rng = np.random.default_rng(9)
        errors = rng.normal(loc=1.0, scale=0.1, size=5000)
        t = fit_threshold(errors)
        flagged = classify(errors, t).mean()
        assert flagged < 0.10  # approx P(Z > 2) for near-normal errors
