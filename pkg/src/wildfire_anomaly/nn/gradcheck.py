"""Central finite-difference gradient verification.

Used by the test suite to certify the hand-written backward passes: for
every trainable scalar, perturb by +/-h, re-evaluate the loss, and compare
the difference quotient against the analytic gradient.
"""

from __future__ import annotations

import numpy as np

from .layers import Sequential
from .losses import get_loss


def analytic_gradients(network: Sequential, X: np.ndarray, Y: np.ndarray,
                       loss_name: str) -> list[np.ndarray]:
    loss = get_loss(loss_name)
    network.zero_grad()
    pred = network.forward(X)
    loss.forward(pred, Y)
    network.backward(loss.backward())
    return [p.grad.copy() for p in network.params()]


def numeric_gradients(network: Sequential, X: np.ndarray, Y: np.ndarray,
                      loss_name: str, h: float = 1e-5) -> list[np.ndarray]:
    loss = get_loss(loss_name)
    grads = []
    for p in network.params():
        g = np.zeros_like(p.value)
        flat = p.value.ravel()
        gflat = g.ravel()
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + h
            up = loss.forward(network.forward(X), Y)
            flat[i] = orig - h
            down = loss.forward(network.forward(X), Y)
            flat[i] = orig
            gflat[i] = (up - down) / (2.0 * h)
        grads.append(g)
    return grads


def gradient_check(network: Sequential, X: np.ndarray, Y: np.ndarray,
                   loss_name: str = "mse", h: float = 1e-5,
                   rel_tol: float = 1e-4) -> tuple[float, int]:
    """Compare analytic vs central-difference gradients.

    Returns (fraction of parameters within rel_tol, total parameter count).
    Relative error uses max(|a|, |n|, 1e-8) as the scale so near-zero
    gradients do not blow up the ratio.
    """
    analytic = analytic_gradients(network, X, Y, loss_name)
    numeric = numeric_gradients(network, X, Y, loss_name, h)
    ok = 0
    total = 0
    for a, nu in zip(analytic, numeric):
        scale = np.maximum(np.maximum(np.abs(a), np.abs(nu)), 1e-8)
        rel = np.abs(a - nu) / scale
        ok += int(np.sum(rel < rel_tol))
        total += a.size
    return ok / total, total
