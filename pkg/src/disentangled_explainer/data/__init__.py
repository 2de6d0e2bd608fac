"""The synthetic dataset: generation, ground truths and persistence."""

from .dataset_io import read_split, read_splits, write_splits
from .synthetic_dataset import (
    VECTOR_SIZE,
    DatasetSplits,
    SyntheticPoint,
    as_arrays,
    generate,
    ground_truth,
    score,
)

__all__ = [
    "VECTOR_SIZE",
    "SyntheticPoint",
    "DatasetSplits",
    "score",
    "generate",
    "ground_truth",
    "as_arrays",
    "write_splits",
    "read_split",
    "read_splits",
]
