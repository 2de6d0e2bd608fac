"""Local linear surrogates of a scalar function of one modality value."""

from .explanation import Explanation, ExplanationKind
from .feature_space import EmptyInputError, FeatureSpace, segment
from .perturbation import PerturbationBatch, kernel_weights, perturb
from .surrogate_fitter import explain_modality, fit, fit_many, fit_targets

__all__ = [
    "EmptyInputError",
    "FeatureSpace",
    "segment",
    "PerturbationBatch",
    "kernel_weights",
    "perturb",
    "Explanation",
    "ExplanationKind",
    "fit",
    "fit_many",
    "fit_targets",
    "explain_modality",
]
