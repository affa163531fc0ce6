"""Feature-set manifests for the two dataset variants.

The full 28-column set carries min/max/mean/variance aggregates of the six
weather parameters (precipitation has no Min column in the source data)
plus five vegetation-index statistics. The reduced 17-column set keeps the
columns that survived the importance screen, with Temperature_Min retained
deliberately; it is pinned as a manifest rather than recomputed so the
pipeline is stable across forest refits.
"""

from __future__ import annotations

from dataclasses import dataclass

REGIONS = ("NSW", "NT", "QL", "SA", "VI", "WA", "TA")

DATE_MIN = "2005-01-01"
DATE_MAX = "2021-01-23"

FIRE_AREA_COLUMN = "Estimated_fire_area"
LABEL_COLUMN = "Fire"

DATASET1_COLUMNS = [
    "Precipitation_Max",
    "Precipitation_Mean",
    "Precipitation_Variance",
    "RelativeHumidity_Max",
    "RelativeHumidity_Mean",
    "RelativeHumidity_Min",
    "RelativeHumidity_Variance",
    "SoilWaterContent_Max",
    "SoilWaterContent_Mean",
    "SoilWaterContent_Min",
    "SoilWaterContent_Variance",
    "SolarRadiation_Max",
    "SolarRadiation_Mean",
    "SolarRadiation_Min",
    "SolarRadiation_Variance",
    "Temperature_Max",
    "Temperature_Mean",
    "Temperature_Min",
    "Temperature_Variance",
    "WindSpeed_Max",
    "WindSpeed_Mean",
    "WindSpeed_Min",
    "WindSpeed_Variance",
    "Vegetation_index_Mean",
    "Vegetation_index_Max",
    "Vegetation_index_Min",
    "Vegetation_index_Std",
    "Vegetation_index_Variance",
]

DATASET2_COLUMNS = [
    "Vegetation_index_Mean",
    "Temperature_Max",
    "SoilWaterContent_Mean",
    "RelativeHumidity_Min",
    "RelativeHumidity_Mean",
    "RelativeHumidity_Variance",
    "Temperature_Variance",
    "SolarRadiation_Max",
    "Vegetation_index_Std",
    "Vegetation_index_Variance",
    "Temperature_Mean",
    "SoilWaterContent_Max",
    "SoilWaterContent_Variance",
    "SolarRadiation_Mean",
    "WindSpeed_Min",
    "Vegetation_index_Max",
    "Temperature_Min",
]


@dataclass(frozen=True)
class FeatureSet:
    name: str
    columns: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.columns)) != len(self.columns):
            raise ValueError(f"duplicate columns in feature set {self.name}")


DATASET1 = FeatureSet("Dataset1", tuple(DATASET1_COLUMNS))
DATASET2 = FeatureSet("Dataset2", tuple(DATASET2_COLUMNS))

FEATURE_SETS = {"Dataset1": DATASET1, "Dataset2": DATASET2}


def get_feature_set(name: str) -> FeatureSet:
    try:
        return FEATURE_SETS[name]
    except KeyError:
        raise KeyError(
            f"unknown feature set {name!r}; expected one of {sorted(FEATURE_SETS)}"
        ) from None
