"""Shared numeric kernel.

Seeded randomness, weighted ridge regression and the statistics used to
evaluate explanations. Everything here is a pure function, except
:class:`Rng` which is a single-owner stream.
"""

from .ridge import SingularSystemError, weighted_ridge
from .rng import Rng, derive_seed
from .statistics import (
    DegenerateVectorError,
    InsufficientDataError,
    NumericsError,
    RatingsMatrix,
    UndefinedCorrelationError,
    cosine_distance,
    krippendorff_alpha_nominal,
    pearson,
    topk_mean_abs,
)

__all__ = [
    "Rng",
    "derive_seed",
    "weighted_ridge",
    "SingularSystemError",
    "NumericsError",
    "UndefinedCorrelationError",
    "DegenerateVectorError",
    "InsufficientDataError",
    "RatingsMatrix",
    "pearson",
    "cosine_distance",
    "topk_mean_abs",
    "krippendorff_alpha_nominal",
]
