"""Finite-difference verification of every hand-written backward pass."""

import numpy as np
import pytest

from wildfire_anomaly.autoencoder import AutoencoderSpec, build
from wildfire_anomaly.nn import LSTM, Dense, RepeatVector, Sequential, gradient_check


def random_dense_net(rng, depth, width, in_dim, activations=("relu", "tanh", "sigmoid")):
    layers = []
    dims = [in_dim] + [int(rng.integers(2, width + 1)) for _ in range(depth)]
    for k in range(depth):
        act = activations[int(rng.integers(len(activations)))]
        layers.append(Dense(dims[k], dims[k + 1], act, rng=rng))
    return Sequential(layers), dims[-1]


class TestDenseGradients:
    @pytest.mark.parametrize("seed", range(5))
    def test_random_three_layer_net(self, seed):
        rng = np.random.default_rng(seed)
        net, out_dim = random_dense_net(rng, depth=3, width=8, in_dim=5)
        X = rng.uniform(0.05, 0.95, size=(4, 5))
        Y = rng.uniform(0.05, 0.95, size=(4, out_dim))
        frac, total = gradient_check(net, X, Y, loss_name="mse")
        assert frac == 1.0, f"{total} params, only {frac:.4%} matched"

    def test_softmax_output_layer(self):
        rng = np.random.default_rng(17)
        net = Sequential([Dense(4, 6, "relu", rng=rng), Dense(6, 3, "softmax", rng=rng)])
        X = rng.uniform(size=(5, 4))
        Y = rng.uniform(size=(5, 3))
        frac, _ = gradient_check(net, X, Y, loss_name="mse")
        assert frac == 1.0

    def test_msle_loss_gradients(self):
        rng = np.random.default_rng(23)
        net = Sequential([Dense(4, 5, "relu", rng=rng), Dense(5, 4, "identity", rng=rng)])
        X = rng.uniform(0.1, 0.9, size=(6, 4))
        frac, _ = gradient_check(net, X, X, loss_name="msle")
        assert frac > 0.99


class TestLSTMGradients:
    @pytest.mark.parametrize("seed", range(3))
    def test_single_lstm_layer(self, seed):
        rng = np.random.default_rng(100 + seed)
        net = Sequential([LSTM(3, 5, rng=rng), Dense(5, 3, "identity", rng=rng)])
        X = rng.uniform(0.1, 0.9, size=(2, 4, 3))
        frac, _ = gradient_check(net, X, X, loss_name="mse")
        assert frac == 1.0

    def test_stacked_lstm_with_repeat_vector(self):
        rng = np.random.default_rng(200)
        net = Sequential([
            LSTM(2, 4, rng=rng),
            LSTM(4, 3, return_sequences=False, rng=rng),
            RepeatVector(5),
            LSTM(3, 4, rng=rng),
            Dense(4, 2, "identity", rng=rng),
        ])
        X = rng.uniform(0.1, 0.9, size=(2, 5, 2))
        frac, _ = gradient_check(net, X, X, loss_name="mse")
        assert frac == 1.0


class TestAutoencoderGradients:
    def test_small_fc_autoencoder(self):
        ae = build(AutoencoderSpec(kind="fc", input_dim=6, encoder_units=[8, 4]), seed=3)
        rng = np.random.default_rng(3)
        X = rng.uniform(0.1, 0.9, size=(5, 6))
        frac, _ = gradient_check(ae.network, X, X, loss_name="msle")
        assert frac > 0.99

    def test_small_lstm_autoencoder(self):
        ae = build(AutoencoderSpec(kind="lstm", input_dim=3, encoder_units=[6, 4],
                                   window_length=4), seed=4)
        rng = np.random.default_rng(4)
        X = rng.uniform(0.1, 0.9, size=(3, 4, 3))
        frac, _ = gradient_check(ae.network, X, X, loss_name="msle")
        assert frac > 0.99
