"""One-class SVM trained with a most-violating-pair SMO solver.

Solves the single-class dual in its normalised form:

    min_a  1/2 a' K a    s.t.  sum(a) = 1,  0 <= a_i <= 1/(nu * n)

Each update picks the pair that most violates the KKT conditions (smallest
gradient among coordinates free to grow, largest among those free to
shrink), moves mass between them along the equality constraint, and clips
to the box. The offset rho comes from the gradient of the free support
vectors, so f(x) = sum_i a_i K(x_i, x) - rho is ~0 on the margin; negative
values are anomalies.

The nu parameter keeps its usual role: asymptotically an upper bound on
the flagged training fraction and a lower bound on the support-vector
fraction. Kernel rows are computed on demand and cached, so the full Gram
matrix is only materialised for small problems.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

KERNELS = ("linear", "polynomial", "rbf", "sigmoid")

DEFAULT_TOL = 1e-4
DEFAULT_MAX_PASSES = 10_000
_GRAM_CACHE_LIMIT = 4096  # precompute the full Gram matrix up to this many rows


def resolve_gamma(X: np.ndarray, gamma: float | None) -> float:
    """Scale-heuristic default: 1 / (n_features * var(X))."""
    if gamma is not None:
        return gamma
    var = float(np.var(X))
    if var <= 0:
        var = 1.0
    return 1.0 / (X.shape[1] * var)


def kernel_matrix(A: np.ndarray, B: np.ndarray, kernel: str, gamma: float,
                  degree: int = 3, coef0: float = 0.0) -> np.ndarray:
    """|A| x |B| kernel evaluations."""
    if kernel == "linear":
        return A @ B.T
    if kernel == "polynomial":
        return (gamma * (A @ B.T) + coef0) ** degree
    if kernel == "rbf":
        sq = (np.sum(A * A, axis=1)[:, None] + np.sum(B * B, axis=1)[None, :]
              - 2.0 * (A @ B.T))
        return np.exp(-gamma * np.maximum(sq, 0.0))
    if kernel == "sigmoid":
        return np.tanh(gamma * (A @ B.T) + coef0)
    raise ValueError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")


@dataclass
class OneClassSVMModel:
    kernel: str
    nu: float
    gamma: float
    degree: int
    coef0: float
    support_vectors: np.ndarray
    alpha: np.ndarray         # dual coefficients of the support vectors, sum = 1
    rho: float
    converged: bool
    kkt_residual: float
    dual_objective: float
    n_features: int


class _KernelRows:
    """On-demand kernel rows with a full-matrix fast path for small n."""

    def __init__(self, X, kernel, gamma, degree, coef0):
        self.X = X
        self.kernel = kernel
        self.gamma = gamma
        self.degree = degree
        self.coef0 = coef0
        n = len(X)
        self._full = (kernel_matrix(X, X, kernel, gamma, degree, coef0)
                      if n <= _GRAM_CACHE_LIMIT else None)
        self._cache: dict[int, np.ndarray] = {}

    def row(self, i: int) -> np.ndarray:
        if self._full is not None:
            return self._full[i]
        row = self._cache.get(i)
        if row is None:
            row = kernel_matrix(self.X[i:i + 1], self.X, self.kernel,
                                self.gamma, self.degree, self.coef0)[0]
            if len(self._cache) > 256:
                self._cache.clear()
            self._cache[i] = row
        return row


def _solve_smo(K: _KernelRows, n: int, upper: float, tol: float,
               max_passes: int) -> tuple[np.ndarray, np.ndarray, bool, float]:
    """Returns (alpha, gradient, converged, final KKT residual)."""
    alpha = np.zeros(n)
    m = int(np.floor(1.0 / upper)) if upper > 0 else n
    m = min(m, n)
    alpha[:m] = upper
    if m < n:
        alpha[m] = 1.0 - m * upper

    grad = np.zeros(n)
    for i in np.nonzero(alpha > 0)[0]:
        grad += alpha[i] * K.row(i)

    residual = np.inf
    eps = 1e-12
    for _ in range(max_passes):
        for _ in range(n):
            can_grow = alpha < upper - eps
            can_shrink = alpha > eps
            if not can_grow.any() or not can_shrink.any():
                residual = 0.0
                break
            i = int(np.argmin(np.where(can_grow, grad, np.inf)))
            j = int(np.argmax(np.where(can_shrink, grad, -np.inf)))
            residual = grad[j] - grad[i]
            if residual < tol:
                break
            Ki, Kj = K.row(i), K.row(j)
            quad = Ki[i] + Kj[j] - 2.0 * Ki[j]
            if quad <= 0:
                quad = 1e-12
            delta = residual / quad
            delta = min(delta, upper - alpha[i], alpha[j])
            alpha[i] += delta
            alpha[j] -= delta
            grad += delta * (Ki - Kj)
        if residual < tol:
            return alpha, grad, True, float(max(residual, 0.0))
    return alpha, grad, False, float(residual)


def _fit_rho(alpha: np.ndarray, grad: np.ndarray, upper: float) -> float:
    eps = min(1e-8, upper * 1e-6)
    free = (alpha > eps) & (alpha < upper - eps)
    if free.any():
        return float(grad[free].mean())
    at_upper = alpha >= upper - eps
    at_zero = alpha <= eps
    lo = grad[at_upper].max() if at_upper.any() else -np.inf
    hi = grad[at_zero].min() if at_zero.any() else np.inf
    if np.isfinite(lo) and np.isfinite(hi):
        return float((lo + hi) / 2.0)
    return float(lo if np.isfinite(lo) else hi)


def ocsvm_fit(latent_train: np.ndarray, kernel: str = "linear", nu: float = 0.6,
              seed: int = 0, gamma: float | None = None, degree: int = 3,
              coef0: float = 0.0, tol: float = DEFAULT_TOL,
              max_passes: int = DEFAULT_MAX_PASSES) -> OneClassSVMModel:
    """Solve the dual and keep only the support vectors.

    ``seed`` is accepted for interface parity with the other detectors; the
    pair-selection solver is deterministic and never draws from it.
    """
    del seed
    X = np.asarray(latent_train, dtype=float)
    if X.ndim != 2 or len(X) == 0:
        raise ValueError("latent_train must be a nonempty 2-D matrix")
    if not 0.0 < nu <= 1.0:
        raise ValueError(f"nu must be in (0, 1], got {nu}")
    if kernel not in KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")

    n = len(X)
    gamma = resolve_gamma(X, gamma)
    upper = 1.0 / (nu * n)
    K = _KernelRows(X, kernel, gamma, degree, coef0)
    alpha, grad, converged, residual = _solve_smo(K, n, upper, tol, max_passes)
    if not converged:
        warnings.warn(
            f"one-class SVM solver did not reach tolerance {tol} "
            f"(KKT residual {residual:.3e}); returning best-effort model")

    rho = _fit_rho(alpha, grad, upper)
    dual = 0.5 * float(alpha @ grad)  # grad = K alpha
    sv = alpha > 1e-12
    return OneClassSVMModel(
        kernel=kernel, nu=nu, gamma=gamma, degree=degree, coef0=coef0,
        support_vectors=X[sv], alpha=alpha[sv], rho=rho,
        converged=converged, kkt_residual=residual, dual_objective=dual,
        n_features=X.shape[1],
    )


def ocsvm_decision(model: OneClassSVMModel, X: np.ndarray) -> np.ndarray:
    """f(x) = sum_i alpha_i K(x_i, x) - rho; negative means anomalous."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or (X.size and X.shape[1] != model.n_features):
        raise ValueError(
            f"expected (n, {model.n_features}) input, got shape {X.shape}")
    if len(X) == 0:
        return np.zeros(0)
    K = kernel_matrix(X, model.support_vectors, model.kernel, model.gamma,
                      model.degree, model.coef0)
    return K @ model.alpha - model.rho


def ocsvm_predict(model: OneClassSVMModel, X: np.ndarray) -> np.ndarray:
    """1 (anomaly) where the decision function is negative."""
    return (ocsvm_decision(model, X) < 0).astype(int)
