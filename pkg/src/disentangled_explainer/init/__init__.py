"""Tools to configure a run and build its model."""

from .experiment_builder import Experiment, ExperimentBuilder
from .model_factory import ModelFactory, parse_model_flag

__all__ = [
    "Experiment",
    "ExperimentBuilder",
    "ModelFactory",
    "parse_model_flag",
]
