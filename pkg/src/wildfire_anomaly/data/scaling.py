"""Min-max scaling, fitted per split.

Every split is scaled with its own statistics so no training information
leaks into validation or test. A constant column maps to 0 everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class MinMaxScaler:
    mins: np.ndarray | None = None
    maxs: np.ndarray | None = None

    def fit(self, X: np.ndarray) -> "MinMaxScaler":
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or len(X) == 0:
            raise ValueError("scaler needs a nonempty 2-D matrix")
        self.mins = X.min(axis=0)
        self.maxs = X.max(axis=0)
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        if self.mins is None:
            raise ValueError("scaler is not fitted")
        X = np.asarray(X, dtype=float)
        span = self.maxs - self.mins
        out = np.zeros_like(X)
        live = span > 0
        out[:, live] = (X[:, live] - self.mins[live]) / span[live]
        return out

    def fit_transform(self, X: np.ndarray) -> np.ndarray:
        return self.fit(X).transform(X)

    def stats(self) -> dict:
        return {"min": self.mins.tolist(), "max": self.maxs.tolist()}

    @classmethod
    def from_stats(cls, stats: dict) -> "MinMaxScaler":
        return cls(mins=np.asarray(stats["min"], dtype=float),
                   maxs=np.asarray(stats["max"], dtype=float))
