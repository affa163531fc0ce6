"""Data pipeline: ingestion, labeling, feature sets, splitting, scaling, windowing."""

from .feature_sets import (
    DATASET1,
    DATASET2,
    FEATURE_SETS,
    REGIONS,
    FeatureSet,
    get_feature_set,
)
from .scaling import MinMaxScaler
from .splitting import (
    NW_HOLDOUT,
    W_PER_EVAL_SPLIT,
    SplitBundle,
    SplitConfigError,
    scale_per_split,
    split,
)
from .synthetic import (
    ReconstructionBenchmark,
    make_reconstruction_benchmark,
    make_synthetic_sources,
    write_synthetic_sources,
)
from .table import (
    FeatureMatrix,
    LoadReport,
    RecordTable,
    SchemaError,
    derive_fire_label,
    label_table,
    load_tables,
    select_features,
)
from .windows import SequenceTensor, window_labels, window_sequences

__all__ = [
    "DATASET1",
    "DATASET2",
    "FEATURE_SETS",
    "NW_HOLDOUT",
    "REGIONS",
    "W_PER_EVAL_SPLIT",
    "FeatureMatrix",
    "FeatureSet",
    "LoadReport",
    "MinMaxScaler",
    "RecordTable",
    "ReconstructionBenchmark",
    "SchemaError",
    "SequenceTensor",
    "SplitBundle",
    "SplitConfigError",
    "derive_fire_label",
    "get_feature_set",
    "label_table",
    "load_tables",
    "make_reconstruction_benchmark",
    "make_synthetic_sources",
    "scale_per_split",
    "select_features",
    "split",
    "window_labels",
    "window_sequences",
    "write_synthetic_sources",
]
