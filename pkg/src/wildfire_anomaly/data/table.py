"""Record table: ingest, label derivation, and feature selection.

The three source CSVs (weather, vegetation index, wildfire) are inner
joined on (Date, Region); rows missing any feature value are dropped and
counted in the load report. Labels are derived from the estimated fire
area: any nonzero burnt area makes the day a wildfire day.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from .feature_sets import (
    DATE_MAX,
    DATE_MIN,
    FIRE_AREA_COLUMN,
    LABEL_COLUMN,
    REGIONS,
    FeatureSet,
)


class SchemaError(ValueError):
    """Input data does not match the expected CSV schema."""


@dataclass
class LoadReport:
    rows_joined: int = 0
    rows_dropped_missing: int = 0
    rows_kept: int = 0
    sources: dict = field(default_factory=dict)


@dataclass
class RecordTable:
    """Dated, region-tagged feature rows plus fire area and optional labels."""

    frame: pd.DataFrame
    load_report: LoadReport | None = None

    def __post_init__(self):
        for col in ("Date", "Region", FIRE_AREA_COLUMN):
            if col not in self.frame.columns:
                raise SchemaError(f"record table is missing the {col!r} column")
        if (self.frame[FIRE_AREA_COLUMN] < 0).any():
            raise ValueError("fire area must be non-negative")
        bad_regions = set(self.frame["Region"].unique()) - set(REGIONS)
        if bad_regions:
            raise SchemaError(f"unknown regions {sorted(bad_regions)}; expected {REGIONS}")

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def feature_columns(self) -> list[str]:
        reserved = {"Date", "Region", FIRE_AREA_COLUMN, LABEL_COLUMN}
        return [c for c in self.frame.columns if c not in reserved]

    @property
    def is_labeled(self) -> bool:
        return LABEL_COLUMN in self.frame.columns

    @property
    def labels(self) -> np.ndarray:
        if not self.is_labeled:
            raise ValueError("table has no labels; call label_table first")
        return self.frame[LABEL_COLUMN].to_numpy(dtype=int)


@dataclass
class FeatureMatrix:
    """A (rows x features) view of a table with provenance attached."""

    values: np.ndarray
    columns: list[str]
    feature_set: str
    row_ids: np.ndarray
    labels: np.ndarray | None = None
    scaler_stats: dict | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __len__(self) -> int:
        return len(self.values)


def derive_fire_label(fire_area: float) -> int:
    """1 for any nonzero burnt area, 0 otherwise."""
    if fire_area < 0:
        raise ValueError(f"fire area must be non-negative, got {fire_area}")
    return int(fire_area != 0)


def _read_source(path, name: str) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"{name} file not found: {path}")
    frame = pd.read_csv(path)
    for col in ("Date", "Region"):
        if col not in frame.columns:
            raise SchemaError(f"{name} file {path} is missing the {col!r} column")
    frame["Date"] = frame["Date"].astype(str)
    return frame


def load_tables(weather_path, ndvi_path, wildfire_path) -> RecordTable:
    """Inner-join the three sources on (Date, Region) and drop gappy rows."""
    weather = _read_source(weather_path, "weather")
    ndvi = _read_source(ndvi_path, "NDVI")
    wildfire = _read_source(wildfire_path, "wildfire")
    if FIRE_AREA_COLUMN not in wildfire.columns:
        raise SchemaError(
            f"wildfire file is missing the {FIRE_AREA_COLUMN!r} column")

    merged = weather.merge(ndvi, on=["Date", "Region"], how="inner")
    merged = merged.merge(wildfire[["Date", "Region", FIRE_AREA_COLUMN]],
                          on=["Date", "Region"], how="inner")
    joined = len(merged)
    if joined == 0:
        raise SchemaError("join on (Date, Region) produced zero rows")

    kept = merged.dropna()
    dropped = joined - len(kept)
    kept = kept.reset_index(drop=True)

    outside = (kept["Date"] < DATE_MIN) | (kept["Date"] > DATE_MAX)
    if outside.any():
        warnings.warn(
            f"{int(outside.sum())} rows dated outside {DATE_MIN}..{DATE_MAX}")

    report = LoadReport(
        rows_joined=joined,
        rows_dropped_missing=dropped,
        rows_kept=len(kept),
        sources={
            "weather": str(weather_path),
            "ndvi": str(ndvi_path),
            "wildfire": str(wildfire_path),
        },
    )
    return RecordTable(frame=kept, load_report=report)


def label_table(table: RecordTable) -> RecordTable:
    """Attach the binary wildfire label derived from the fire area."""
    frame = table.frame.copy()
    area = frame[FIRE_AREA_COLUMN].to_numpy(dtype=float)
    if (area < 0).any():
        raise ValueError("fire area must be non-negative")
    frame[LABEL_COLUMN] = (area != 0).astype(int)
    return RecordTable(frame=frame, load_report=table.load_report)


def select_features(table: RecordTable, feature_set: FeatureSet) -> FeatureMatrix:
    """Column-ordered feature matrix; Date and Region never participate."""
    missing = [c for c in feature_set.columns if c not in table.frame.columns]
    if missing:
        raise SchemaError(
            f"table is missing columns required by {feature_set.name}: {missing}")
    values = table.frame[list(feature_set.columns)].to_numpy(dtype=float)
    labels = table.labels if table.is_labeled else None
    return FeatureMatrix(
        values=values,
        columns=list(feature_set.columns),
        feature_set=feature_set.name,
        row_ids=np.arange(len(values)),
        labels=labels,
    )
