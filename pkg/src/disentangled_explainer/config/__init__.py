"""Run configurations.

This module contains classes that represent, read and validate the
configuration of a run.
"""

from .components_config import (
    DisentangleConfiguration,
    ModelSourceConfiguration,
    SectionConfiguration,
    SurrogateConfiguration,
    TrainingConfiguration,
    ValidationConfiguration,
)
from .run_config import RunConfiguration

__all__ = [
    "RunConfiguration",
    "SectionConfiguration",
    "DisentangleConfiguration",
    "SurrogateConfiguration",
    "ModelSourceConfiguration",
    "TrainingConfiguration",
    "ValidationConfiguration",
]
