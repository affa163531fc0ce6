"""Minimal reverse-mode training engine: layers, losses, optimizers, schedules."""

from .activations import get_activation
from .gradcheck import gradient_check
from .layers import LSTM, Dense, Param, RepeatVector, Sequential
from .losses import MSELoss, MSLELoss, get_loss, mse, msle
from .optimizers import OptimizerConfig, clip_gradients, make_optimizer
from .schedules import ScheduleConfig, schedule_lr
from .training import TrainConfig, TrainingDiverged, TrainResult, evaluate_loss, train

__all__ = [
    "LSTM",
    "Dense",
    "MSELoss",
    "MSLELoss",
    "OptimizerConfig",
    "Param",
    "RepeatVector",
    "ScheduleConfig",
    "Sequential",
    "TrainConfig",
    "TrainResult",
    "TrainingDiverged",
    "clip_gradients",
    "evaluate_loss",
    "get_activation",
    "get_loss",
    "gradient_check",
    "make_optimizer",
    "mse",
    "msle",
    "schedule_lr",
    "train",
]
