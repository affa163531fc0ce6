"""Learning-rate schedules, evaluated per optimizer step.

``cyclical`` is the triangular policy: the rate climbs linearly from
``base_lr`` to ``max_lr`` over ``step_size`` steps and back, repeating with
period ``2 * step_size``. The remaining schedules follow their usual
closed forms; ``none`` simply returns the base rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SCHEDULE_KINDS = (
    "none",
    "exponential_decay",
    "polynomial_decay",
    "inverse_time_decay",
    "cosine_decay",
    "cyclical",
)


@dataclass
class ScheduleConfig:
    kind: str = "none"
    base_lr: float = 1e-3
    # decay family
    decay_rate: float = 0.96
    decay_steps: int = 1000
    power: float = 1.0
    end_lr: float = 0.0
    # cyclical triangular policy
    max_lr: float = 1e-3
    step_size: int = 100

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ValueError(f"unknown schedule {self.kind!r}; expected one of {SCHEDULE_KINDS}")
        if self.base_lr <= 0:
            raise ValueError("base_lr must be positive")


def schedule_lr(schedule: ScheduleConfig, step: int) -> float:
    """Learning rate at optimizer step ``step`` (step counts from 0)."""
    if step < 0:
        raise ValueError(f"step must be >= 0, got {step}")
    kind = schedule.kind
    lr0 = schedule.base_lr
    if kind == "none":
        return lr0
    if kind == "exponential_decay":
        return lr0 * schedule.decay_rate ** (step / schedule.decay_steps)
    if kind == "polynomial_decay":
        frac = min(step, schedule.decay_steps) / schedule.decay_steps
        return (lr0 - schedule.end_lr) * (1.0 - frac) ** schedule.power + schedule.end_lr
    if kind == "inverse_time_decay":
        return lr0 / (1.0 + schedule.decay_rate * step / schedule.decay_steps)
    if kind == "cosine_decay":
        frac = min(step, schedule.decay_steps) / schedule.decay_steps
        return lr0 * 0.5 * (1.0 + math.cos(math.pi * frac))
    # cyclical (triangular)
    cycle = math.floor(1 + step / (2 * schedule.step_size))
    x = abs(step / schedule.step_size - 2 * cycle + 1)
    return lr0 + (schedule.max_lr - lr0) * max(0.0, 1.0 - x)
