"""Elementwise activations and their backward rules.

Each activation maps pre-activations ``z`` to outputs ``y`` and knows how to
turn a gradient w.r.t. ``y`` into a gradient w.r.t. ``z``. Softmax is the one
non-elementwise case; its backward contracts the full Jacobian against the
incoming gradient, which reduces to ``y * (g - sum(g * y))`` row-wise.
"""

from __future__ import annotations

import numpy as np


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # exp overflow for very negative z saturates to inf and the quotient
    # lands on exactly 0.0, so only the warning needs silencing
    with np.errstate(over="ignore"):
        return 1.0 / (1.0 + np.exp(-z))


class Activation:
    """Base class: forward(z) -> y, backward(grad_y, z, y) -> grad_z."""

    name = "base"

    def forward(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, grad_y: np.ndarray, z: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class Identity(Activation):
    name = "identity"

    def forward(self, z):
        return z

    def backward(self, grad_y, z, y):
        return grad_y


class Relu(Activation):
    name = "relu"

    def forward(self, z):
        return np.maximum(z, 0.0)

    def backward(self, grad_y, z, y):
        return grad_y * (z > 0)


class Sigmoid(Activation):
    name = "sigmoid"

    def forward(self, z):
        return _sigmoid(z)

    def backward(self, grad_y, z, y):
        return grad_y * y * (1.0 - y)


class Tanh(Activation):
    name = "tanh"

    def forward(self, z):
        return np.tanh(z)

    def backward(self, grad_y, z, y):
        return grad_y * (1.0 - y * y)


class Softmax(Activation):
    """Row-wise softmax over the last axis."""

    name = "softmax"

    def forward(self, z):
        shifted = z - np.max(z, axis=-1, keepdims=True)
        e = np.exp(shifted)
        return e / np.sum(e, axis=-1, keepdims=True)

    def backward(self, grad_y, z, y):
        dot = np.sum(grad_y * y, axis=-1, keepdims=True)
        return y * (grad_y - dot)


_REGISTRY: dict[str, Activation] = {
    a.name: a for a in (Identity(), Relu(), Sigmoid(), Tanh(), Softmax())
}


def get_activation(name: str) -> Activation:
    """Look up an activation by name; raises KeyError for unknown names."""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown activation {name!r}; expected one of {sorted(_REGISTRY)}"
        ) from None
