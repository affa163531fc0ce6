"""Dense and LSTM layers with hand-written backward passes.

Layers cache whatever the backward pass needs during ``forward`` and
accumulate parameter gradients into ``Param.grad`` during ``backward``.
A ``Sequential`` chains layers; calling ``backward`` with the loss gradient
propagates it back through the whole stack.

Dense applies to the last axis, so a 3-D (batch, time, features) input gets
the same kernel at every timestep (time-distributed behaviour for free).
"""

from __future__ import annotations

import numpy as np

from .activations import Activation, get_activation


class Param:
    """A trainable array plus its gradient accumulator."""

    __slots__ = ("name", "value", "grad")

    def __init__(self, name: str, value: np.ndarray):
        self.name = name
        self.value = value
        self.grad = np.zeros_like(value)

    @property
    def size(self) -> int:
        return self.value.size


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int,
                   shape: tuple[int, ...]) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Layer:
    """Base layer; subclasses define forward/backward and expose params."""

    def params(self) -> list[Param]:
        return []

    def forward(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def zero_grad(self) -> None:
        for p in self.params():
            p.grad[...] = 0.0


class Dense(Layer):
    """Fully connected layer: y = activation(x @ W + b), applied to the last axis."""

    def __init__(self, in_dim: int, units: int, activation: str = "identity",
                 rng: np.random.Generator | None = None, name: str = "dense"):
        if units < 1:
            raise ValueError(f"units must be >= 1, got {units}")
        rng = rng if rng is not None else np.random.default_rng()
        self.in_dim = in_dim
        self.units = units
        self.activation: Activation = get_activation(activation)
        self.W = Param(f"{name}.W", glorot_uniform(rng, in_dim, units, (in_dim, units)))
        self.b = Param(f"{name}.b", np.zeros(units))
        self._cache: tuple | None = None

    def params(self):
        return [self.W, self.b]

    def forward(self, x):
        if x.shape[-1] != self.in_dim:
            raise ValueError(
                f"input width {x.shape[-1]} does not match layer width {self.in_dim}"
            )
        z = x @ self.W.value + self.b.value
        y = self.activation.forward(z)
        self._cache = (x, z, y)
        return y

    def backward(self, grad_out):
        x, z, y = self._cache
        grad_z = self.activation.backward(grad_out, z, y)
        flat_x = x.reshape(-1, self.in_dim)
        flat_g = grad_z.reshape(-1, self.units)
        self.W.grad += flat_x.T @ flat_g
        self.b.grad += flat_g.sum(axis=0)
        return grad_z @ self.W.value.T


class LSTM(Layer):
    """Standard LSTM over (batch, time, features) inputs.

    Gate order in the packed kernels is [input, forget, candidate, output];
    input/forget/output gates use sigmoid, the candidate uses tanh:

        c_t = f * c_{t-1} + i * g        h_t = o * tanh(c_t)

    ``return_sequences=False`` yields the final hidden state (batch, units).
    Forget-gate bias starts at 1.0 so early training does not erase state.
    """

    def __init__(self, in_dim: int, units: int, return_sequences: bool = True,
                 rng: np.random.Generator | None = None, name: str = "lstm"):
        if units < 1:
            raise ValueError(f"units must be >= 1, got {units}")
        rng = rng if rng is not None else np.random.default_rng()
        self.in_dim = in_dim
        self.units = units
        self.return_sequences = return_sequences
        self.W = Param(f"{name}.W", glorot_uniform(rng, in_dim, units, (in_dim, 4 * units)))
        self.U = Param(f"{name}.U", glorot_uniform(rng, units, units, (units, 4 * units)))
        b = np.zeros(4 * units)
        b[units:2 * units] = 1.0
        self.b = Param(f"{name}.b", b)
        self._cache: dict | None = None

    def params(self):
        return [self.W, self.U, self.b]

    def step(self, x_t: np.ndarray, h_prev: np.ndarray, c_prev: np.ndarray):
        """One cell update: returns (h_t, c_t) for a (batch, features) slice."""
        if x_t.shape[-1] != self.in_dim:
            raise ValueError(
                f"input width {x_t.shape[-1]} does not match layer width {self.in_dim}")
        if h_prev.shape[-1] != self.units or c_prev.shape[-1] != self.units:
            raise ValueError(
                f"state width must be {self.units}, got h {h_prev.shape} c {c_prev.shape}")
        u = self.units
        sig = get_activation("sigmoid")
        z = x_t @ self.W.value + h_prev @ self.U.value + self.b.value
        i = sig.forward(z[..., :u])
        f = sig.forward(z[..., u:2 * u])
        g = np.tanh(z[..., 2 * u:3 * u])
        o = sig.forward(z[..., 3 * u:])
        c_t = f * c_prev + i * g
        h_t = o * np.tanh(c_t)
        return h_t, c_t

    def forward(self, x):
        if x.ndim != 3:
            raise ValueError(f"LSTM expects (batch, time, features), got shape {x.shape}")
        if x.shape[-1] != self.in_dim:
            raise ValueError(
                f"input width {x.shape[-1]} does not match layer width {self.in_dim}"
            )
        batch, steps, _ = x.shape
        u = self.units
        h = np.zeros((batch, u))
        c = np.zeros((batch, u))
        gates, cells, hiddens, c_prevs = [], [], [], []
        sig = get_activation("sigmoid")
        # input contributions for all timesteps in one matmul
        xw = (x.reshape(-1, self.in_dim) @ self.W.value).reshape(batch, steps, 4 * u)
        for t in range(steps):
            z = xw[:, t, :] + h @ self.U.value + self.b.value
            i = sig.forward(z[:, :u])
            f = sig.forward(z[:, u:2 * u])
            g = np.tanh(z[:, 2 * u:3 * u])
            o = sig.forward(z[:, 3 * u:])
            c_prevs.append(c)
            hiddens.append(h)
            c = f * c + i * g
            h = o * np.tanh(c)
            gates.append((i, f, g, o))
            cells.append(c)
        out = np.stack([gates[t][3] * np.tanh(cells[t]) for t in range(steps)], axis=1) \
            if self.return_sequences else h
        self._cache = {
            "x": x, "gates": gates, "cells": cells,
            "h_prevs": hiddens, "c_prevs": c_prevs,
        }
        return out

    def backward(self, grad_out):
        cache = self._cache
        x = cache["x"]
        batch, steps, _ = x.shape
        u = self.units
        if self.return_sequences:
            grad_seq = grad_out
        else:
            grad_seq = np.zeros((batch, steps, u))
            grad_seq[:, -1, :] = grad_out
        dz_all = np.empty((batch, steps, 4 * u))
        dh_next = np.zeros((batch, u))
        dc_next = np.zeros((batch, u))
        for t in range(steps - 1, -1, -1):
            i, f, g, o = cache["gates"][t]
            c = cache["cells"][t]
            c_prev = cache["c_prevs"][t]
            h_prev = cache["h_prevs"][t]
            tanh_c = np.tanh(c)

            dh = grad_seq[:, t, :] + dh_next
            do = dh * tanh_c
            dc = dh * o * (1.0 - tanh_c * tanh_c) + dc_next
            df = dc * c_prev
            di = dc * g
            dg = dc * i
            dc_next = dc * f

            dz = dz_all[:, t, :]
            dz[:, :u] = di * i * (1.0 - i)
            dz[:, u:2 * u] = df * f * (1.0 - f)
            dz[:, 2 * u:3 * u] = dg * (1.0 - g * g)
            dz[:, 3 * u:] = do * o * (1.0 - o)

            self.U.grad += h_prev.T @ dz
            dh_next = dz @ self.U.value.T

        # input-side contractions batched over all timesteps
        flat_dz = dz_all.reshape(-1, 4 * u)
        self.W.grad += x.reshape(-1, self.in_dim).T @ flat_dz
        self.b.grad += flat_dz.sum(axis=0)
        return (flat_dz @ self.W.value.T).reshape(batch, steps, self.in_dim)


class RepeatVector(Layer):
    """Tile a (batch, features) vector into (batch, n, features)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"repeat count must be >= 1, got {n}")
        self.n = n

    def forward(self, x):
        if x.ndim != 2:
            raise ValueError(f"RepeatVector expects (batch, features), got shape {x.shape}")
        return np.repeat(x[:, None, :], self.n, axis=1)

    def backward(self, grad_out):
        return grad_out.sum(axis=1)


class Sequential:
    """A plain layer stack with forward/backward over the whole chain."""

    def __init__(self, layers: list[Layer]):
        if not layers:
            raise ValueError("Sequential needs at least one layer")
        self.layers = layers

    def params(self) -> list[Param]:
        out = []
        for layer in self.layers:
            out.extend(layer.params())
        return out

    def count_params(self) -> int:
        return sum(p.size for p in self.params())

    def forward(self, x: np.ndarray) -> np.ndarray:
        for layer in self.layers:
            x = layer.forward(x)
        return x

    def forward_until(self, x: np.ndarray, stop_after: int) -> np.ndarray:
        """Run layers [0..stop_after] inclusive and return that output."""
        for layer in self.layers[: stop_after + 1]:
            x = layer.forward(x)
        return x

    def backward(self, grad: np.ndarray) -> np.ndarray:
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad

    def zero_grad(self) -> None:
        for layer in self.layers:
            layer.zero_grad()

    def get_weights(self) -> list[np.ndarray]:
        return [p.value.copy() for p in self.params()]

    def set_weights(self, weights: list[np.ndarray]) -> None:
        params = self.params()
        if len(weights) != len(params):
            raise ValueError(f"expected {len(params)} arrays, got {len(weights)}")
        for p, w in zip(params, weights):
            if p.value.shape != w.shape:
                raise ValueError(f"shape mismatch for {p.name}: {p.value.shape} vs {w.shape}")
            p.value[...] = w
