"""SGD, Adam, and RMSProp with per-parameter state.

Adam uses bias-corrected first and second moments (beta1=0.9, beta2=0.999,
eps=1e-8 by default); RMSProp keeps an exponential average of squared
gradients (rho=0.9). Each optimizer reads gradients off the Param objects
and updates values in place; the learning rate is supplied per step so the
training loop can drive any schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .layers import Param
from .schedules import ScheduleConfig

OPTIMIZER_KINDS = ("sgd", "adam", "rmsprop")


@dataclass
class OptimizerConfig:
    kind: str = "adam"
    learning_rate: float = 1e-3
    momentum: float = 0.0          # sgd
    beta1: float = 0.9             # adam
    beta2: float = 0.999           # adam
    rho: float = 0.9               # rmsprop
    epsilon: float = 1e-8
    schedule: ScheduleConfig = field(default_factory=ScheduleConfig)

    def __post_init__(self):
        if self.kind not in OPTIMIZER_KINDS:
            raise ValueError(f"unknown optimizer {self.kind!r}; expected one of {OPTIMIZER_KINDS}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        # schedules inherit the optimizer's base rate unless set explicitly
        if isinstance(self.schedule, ScheduleConfig) and self.schedule.kind == "none":
            self.schedule.base_lr = self.learning_rate


class Optimizer:
    """Base optimizer over a fixed list of Params."""

    def __init__(self, params: list[Param], config: OptimizerConfig):
        self.params = params
        self.config = config
        self.step_count = 0

    def step(self, lr: float) -> None:
        raise NotImplementedError


class SGD(Optimizer):
    def __init__(self, params, config):
        super().__init__(params, config)
        self._velocity = [np.zeros_like(p.value) for p in params]

    def step(self, lr):
        mu = self.config.momentum
        for p, v in zip(self.params, self._velocity):
            if mu > 0:
                v *= mu
                v += p.grad
                p.value -= lr * v
            else:
                p.value -= lr * p.grad
        self.step_count += 1


class Adam(Optimizer):
    def __init__(self, params, config):
        super().__init__(params, config)
        self._m = [np.zeros_like(p.value) for p in params]
        self._v = [np.zeros_like(p.value) for p in params]

    def step(self, lr):
        b1, b2, eps = self.config.beta1, self.config.beta2, self.config.epsilon
        t = self.step_count + 1
        bc1 = 1.0 - b1 ** t
        bc2 = 1.0 - b2 ** t
        for p, m, v in zip(self.params, self._m, self._v):
            m *= b1
            m += (1.0 - b1) * p.grad
            v *= b2
            v += (1.0 - b2) * p.grad * p.grad
            p.value -= lr * (m / bc1) / (np.sqrt(v / bc2) + eps)
        self.step_count += 1


class RMSProp(Optimizer):
    def __init__(self, params, config):
        super().__init__(params, config)
        self._acc = [np.zeros_like(p.value) for p in params]

    def step(self, lr):
        rho, eps = self.config.rho, self.config.epsilon
        for p, acc in zip(self.params, self._acc):
            acc *= rho
            acc += (1.0 - rho) * p.grad * p.grad
            p.value -= lr * p.grad / (np.sqrt(acc) + eps)
        self.step_count += 1


_OPTIMIZERS = {"sgd": SGD, "adam": Adam, "rmsprop": RMSProp}


def make_optimizer(params: list[Param], config: OptimizerConfig) -> Optimizer:
    return _OPTIMIZERS[config.kind](params, config)


def clip_gradients(params: list[Param], max_norm: float) -> float:
    """Scale all gradients so their global L2 norm is at most ``max_norm``.

    Returns the pre-clip norm. A max_norm <= 0 disables clipping.
    """
    total = 0.0
    for p in params:
        total += float(np.sum(p.grad * p.grad))
    norm = float(np.sqrt(total))
    if max_norm > 0 and norm > max_norm:
        scale = max_norm / norm
        for p in params:
            p.grad *= scale
    return norm
