"""Concrete and abstract tools to validate the run configuration."""

from .config_issue import (
    ConfigurationError,
    ConfigurationIssue,
    ConfigurationWarning,
    create_configuration_issue,
)
from .config_validator import (
    BasicConfigurationValidator,
    ConfigurationValidator,
)
from .section_config_validator import (
    ModelSourceValidator,
    PositiveValuesValidator,
    SectionConfigurationValidator,
    SurrogateConsistencyValidator,
)

__all__ = [
    "ConfigurationError",
    "ConfigurationIssue",
    "ConfigurationWarning",
    "create_configuration_issue",
    "ConfigurationValidator",
    "BasicConfigurationValidator",
    "SectionConfigurationValidator",
    "PositiveValuesValidator",
    "ModelSourceValidator",
    "SurrogateConsistencyValidator",
]
