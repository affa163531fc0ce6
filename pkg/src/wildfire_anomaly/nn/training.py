"""Mini-batch training loop with seeded shuffling and early stopping.

The loop is deterministic for a fixed seed: the shuffle order, weight
initialisation (done by the caller when building the network), and all
numpy arithmetic are reproducible. Early stopping watches validation loss
with a patience window and restores the best-validation weights on exit;
patience 0 disables it and the loop runs every epoch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .layers import Sequential
from .losses import get_loss
from .optimizers import OptimizerConfig, clip_gradients, make_optimizer
from .schedules import ScheduleConfig, schedule_lr


class TrainingDiverged(RuntimeError):
    """Raised when the loss or a gradient goes non-finite."""

    def __init__(self, epoch: int, message: str):
        super().__init__(f"epoch {epoch}: {message}")
        self.epoch = epoch


@dataclass
class TrainConfig:
    epochs: int = 100
    batch_size: int = 32
    patience: int = 20
    seed: int = 0
    loss: str = "msle"
    clip_norm: float = 5.0
    shuffle: bool = True

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.patience < 0:
            raise ValueError("patience must be >= 0")


@dataclass
class TrainResult:
    train_loss: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    best_epoch: int = 0          # 1-based epoch with lowest validation loss
    stopped_epoch: int = 0       # 1-based last epoch that ran
    early_stopped: bool = False


def _resolve_schedule(opt_config: OptimizerConfig, batches_per_epoch: int) -> ScheduleConfig:
    """Fill schedule defaults that depend on the data (cyclical step size)."""
    sched = opt_config.schedule
    if sched.kind == "cyclical" and sched.step_size <= 0:
        sched.step_size = 4 * batches_per_epoch
    if sched.kind == "none":
        sched.base_lr = opt_config.learning_rate
    return sched


def evaluate_loss(network: Sequential, X: np.ndarray, Y: np.ndarray, loss_name: str) -> float:
    loss = get_loss(loss_name)
    return loss.forward(network.forward(X), Y)


def train(
    network: Sequential,
    train_data: tuple[np.ndarray, np.ndarray],
    val_data: tuple[np.ndarray, np.ndarray] | None,
    train_config: TrainConfig,
    opt_config: OptimizerConfig,
) -> TrainResult:
    """Train ``network`` in place and return the loss history.

    ``train_data`` and ``val_data`` are (inputs, targets) pairs; for an
    autoencoder the targets are the inputs themselves.
    """
    X, Y = train_data
    if len(X) == 0:
        raise ValueError("training data is empty")
    if train_config.patience > 0 and val_data is None:
        raise ValueError("early stopping (patience > 0) requires validation data")

    rng = np.random.default_rng(train_config.seed)
    params = network.params()
    optimizer = make_optimizer(params, opt_config)
    loss = get_loss(train_config.loss)

    n = len(X)
    batches_per_epoch = max(1, math.ceil(n / train_config.batch_size))
    schedule = _resolve_schedule(opt_config, batches_per_epoch)

    result = TrainResult()
    best_val = math.inf
    best_weights: list[np.ndarray] | None = None
    step = 0

    for epoch in range(1, train_config.epochs + 1):
        order = rng.permutation(n) if train_config.shuffle else np.arange(n)
        epoch_loss = 0.0
        for start in range(0, n, train_config.batch_size):
            idx = order[start:start + train_config.batch_size]
            xb, yb = X[idx], Y[idx]
            network.zero_grad()
            pred = network.forward(xb)
            batch_loss = loss.forward(pred, yb)
            if not math.isfinite(batch_loss):
                raise TrainingDiverged(epoch, f"non-finite training loss {batch_loss}")
            network.backward(loss.backward())
            grad_norm = clip_gradients(params, train_config.clip_norm)
            if not math.isfinite(grad_norm):
                raise TrainingDiverged(epoch, "non-finite gradient norm")
            optimizer.step(schedule_lr(schedule, step))
            step += 1
            epoch_loss += batch_loss * len(idx)
        result.train_loss.append(epoch_loss / n)

        if val_data is not None:
            vl = evaluate_loss(network, val_data[0], val_data[1], train_config.loss)
            if not math.isfinite(vl):
                raise TrainingDiverged(epoch, f"non-finite validation loss {vl}")
            result.val_loss.append(vl)
            if vl < best_val:
                best_val = vl
                result.best_epoch = epoch
                best_weights = network.get_weights()
            elif train_config.patience > 0 and epoch - result.best_epoch >= train_config.patience:
                result.stopped_epoch = epoch
                result.early_stopped = True
                break
        result.stopped_epoch = epoch

    if result.early_stopped and best_weights is not None:
        network.set_weights(best_weights)
    if val_data is None:
        result.best_epoch = result.stopped_epoch
    return result
