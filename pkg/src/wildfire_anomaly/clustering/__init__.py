"""Latent-feature anomaly detectors: isolation forest, LOF, one-class SVM, PCA."""

from .iforest import (
    IsolationForestModel,
    IsolationTree,
    average_path_length,
    iforest_fit,
    iforest_predict,
    iforest_scores,
)
from .lof import (
    LOFModel,
    lof_fit,
    lof_fit_predict,
    lof_predict,
    lof_scores,
    pairwise_distances,
)
from .ocsvm import (
    OneClassSVMModel,
    kernel_matrix,
    ocsvm_decision,
    ocsvm_fit,
    ocsvm_predict,
)
from .pca import PCAResult, pca_project

__all__ = [
    "IsolationForestModel",
    "IsolationTree",
    "LOFModel",
    "OneClassSVMModel",
    "PCAResult",
    "average_path_length",
    "iforest_fit",
    "iforest_predict",
    "iforest_scores",
    "kernel_matrix",
    "lof_fit",
    "lof_fit_predict",
    "lof_predict",
    "lof_scores",
    "ocsvm_decision",
    "ocsvm_fit",
    "ocsvm_predict",
    "pairwise_distances",
    "pca_project",
]
