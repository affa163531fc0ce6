"""Unsupervised wildfire anomaly detection.

Two detection routes over daily weather and vegetation-index features:
reconstruction-error thresholding with fully connected or LSTM
autoencoders trained on nominal days only, and clustering detectors
(isolation forest, local outlier factor, one-class SVM) over the encoder's
latent features. Includes the data pipeline, a random-forest feature
screen, evaluation metrics, and a CLI with published-configuration presets.
"""

from .autoencoder import Autoencoder, AutoencoderSpec, build, load_checkpoint, save_checkpoint
from .threshold_detector import Threshold, classify, fit_threshold, per_sample_errors

__version__ = "0.1.0"

__all__ = [
    "Autoencoder",
    "AutoencoderSpec",
    "Threshold",
    "build",
    "classify",
    "fit_threshold",
    "load_checkpoint",
    "per_sample_errors",
    "save_checkpoint",
    "__version__",
]
