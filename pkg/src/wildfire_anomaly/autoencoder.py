"""Mirrored fully connected and LSTM autoencoders.

The decoder always mirrors the encoder, so the full width chain
(input, encoder units..., bottleneck, reversed encoder units..., input)
reads the same forwards and backwards. The bottleneck is independent of the
encoder stack: when it differs from the innermost encoder width an extra
bottleneck layer is appended, which lets one architecture serve both the
reconstruction detector (bottleneck = innermost unit) and the latent
clustering pipeline (narrow bottleneck, 8 by default there).

The LSTM variant encodes a (batch, window, features) tensor down to the
final hidden state of the innermost layer, repeats that vector across the
window, and decodes back through mirrored recurrent layers; both variants
finish with a linear projection to the input width.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .nn.layers import LSTM, Dense, RepeatVector, Sequential

FC_DEFAULT_UNITS = [512, 256, 128, 64, 32]
LSTM_DEFAULT_UNITS = [256, 128, 64, 32, 16]

CHECKPOINT_VERSION = 1


@dataclass
class AutoencoderSpec:
    kind: str                      # "fc" | "lstm"
    input_dim: int
    encoder_units: list[int] = field(default_factory=list)
    bottleneck: int = 0            # 0 -> innermost encoder unit
    window_length: int = 10        # lstm only
    activation: str = ""           # "" -> relu for fc, tanh for lstm

    def __post_init__(self):
        if self.kind not in ("fc", "lstm"):
            raise ValueError(f"kind must be 'fc' or 'lstm', got {self.kind!r}")
        if self.input_dim < 1:
            raise ValueError("input_dim must be >= 1")
        if not self.encoder_units:
            self.encoder_units = list(
                FC_DEFAULT_UNITS if self.kind == "fc" else LSTM_DEFAULT_UNITS
            )
        if any(u < 1 for u in self.encoder_units):
            raise ValueError(f"encoder units must be >= 1, got {self.encoder_units}")
        if self.bottleneck == 0:
            self.bottleneck = self.encoder_units[-1]
        if self.bottleneck < 1:
            raise ValueError("bottleneck must be >= 1")
        if not self.activation:
            self.activation = "relu" if self.kind == "fc" else "tanh"
        if self.kind == "lstm" and self.window_length < 1:
            raise ValueError("window_length must be >= 1")

    def stack_units(self) -> list[int]:
        """Encoder widths including the appended bottleneck when it differs."""
        units = list(self.encoder_units)
        if units[-1] != self.bottleneck:
            units.append(self.bottleneck)
        return units

    def width_chain(self) -> list[int]:
        """Full layer-width chain from input to output (palindromic)."""
        enc = self.stack_units()
        return [self.input_dim] + enc + enc[-2::-1] + [self.input_dim]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "input_dim": self.input_dim,
            "encoder_units": list(self.encoder_units),
            "bottleneck": self.bottleneck,
            "window_length": self.window_length,
            "activation": self.activation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AutoencoderSpec":
        return cls(**d)


class Autoencoder:
    """A built autoencoder: the layer stack plus where the bottleneck sits."""

    def __init__(self, spec: AutoencoderSpec, network: Sequential, bottleneck_index: int):
        self.spec = spec
        self.network = network
        self.bottleneck_index = bottleneck_index

    def reconstruct(self, X: np.ndarray) -> np.ndarray:
        """Forward pass through encoder and decoder; output matches X's shape."""
        X = np.asarray(X, dtype=float)
        self._check_input(X)
        return self.network.forward(X)

    def encode(self, X: np.ndarray) -> np.ndarray:
        """Bottleneck activations: (n, bottleneck) for both fc and lstm.

        For the LSTM variant this is the final hidden state of the innermost
        recurrent layer, one vector per window.
        """
        X = np.asarray(X, dtype=float)
        self._check_input(X)
        return self.network.forward_until(X, self.bottleneck_index)

    def count_params(self) -> int:
        return self.network.count_params()

    def _check_input(self, X: np.ndarray) -> None:
        if self.spec.kind == "fc":
            if X.ndim != 2 or X.shape[1] != self.spec.input_dim:
                raise ValueError(
                    f"expected (n, {self.spec.input_dim}) input, got shape {X.shape}"
                )
        else:
            expected = (self.spec.window_length, self.spec.input_dim)
            if X.ndim != 3 or X.shape[1:] != expected:
                raise ValueError(
                    f"expected (n, {expected[0]}, {expected[1]}) input, got shape {X.shape}"
                )


def build(spec: AutoencoderSpec, seed: int = 0) -> Autoencoder:
    """Construct an autoencoder with seeded Glorot initialisation."""
    rng = np.random.default_rng(seed)
    enc_units = spec.stack_units()
    dec_units = enc_units[-2::-1]
    layers: list = []

    if spec.kind == "fc":
        widths = [spec.input_dim] + enc_units
        for k in range(len(enc_units)):
            layers.append(Dense(widths[k], widths[k + 1], spec.activation, rng,
                                name=f"enc{k}"))
        bottleneck_index = len(layers) - 1
        widths = enc_units[-1:] + dec_units + [spec.input_dim]
        for k in range(len(dec_units)):
            layers.append(Dense(widths[k], widths[k + 1], spec.activation, rng,
                                name=f"dec{k}"))
        layers.append(Dense(widths[-2], spec.input_dim, "identity", rng, name="out"))
    else:
        in_dims = [spec.input_dim] + enc_units[:-1]
        for k, units in enumerate(enc_units):
            last = k == len(enc_units) - 1
            layers.append(LSTM(in_dims[k], units, return_sequences=not last,
                               rng=rng, name=f"enc{k}"))
        bottleneck_index = len(layers) - 1
        layers.append(RepeatVector(spec.window_length))
        in_dims = enc_units[-1:] + dec_units
        for k, units in enumerate(dec_units):
            layers.append(LSTM(in_dims[k], units, return_sequences=True,
                               rng=rng, name=f"dec{k}"))
        layers.append(Dense(in_dims[len(dec_units)], spec.input_dim, "identity",
                            rng, name="out"))

    return Autoencoder(spec, Sequential(layers), bottleneck_index)


def save_checkpoint(path, ae: Autoencoder, extra: dict | None = None) -> None:
    """Write a versioned binary container: spec, weights, and metadata."""
    header = {
        "version": CHECKPOINT_VERSION,
        "spec": ae.spec.to_dict(),
        "bottleneck_index": ae.bottleneck_index,
        "extra": extra or {},
    }
    arrays = {f"param_{i}": p.value for i, p in enumerate(ae.network.params())}
    np.savez(path, header=np.frombuffer(json.dumps(header, sort_keys=True).encode(),
                                        dtype=np.uint8), **arrays)


def load_checkpoint(path) -> tuple[Autoencoder, dict]:
    """Rebuild an autoencoder from a checkpoint; returns (model, extra metadata)."""
    with np.load(path) as data:
        header = json.loads(bytes(data["header"]).decode())
        if header["version"] != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {header['version']}")
        spec = AutoencoderSpec.from_dict(header["spec"])
        ae = build(spec, seed=0)
        weights = [np.array(data[f"param_{i}"])
                   for i in range(len(ae.network.params()))]
    ae.network.set_weights(weights)
    return ae, header["extra"]
