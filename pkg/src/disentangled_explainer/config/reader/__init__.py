"""Concrete and abstract tools to read the run configuration."""

from .config_reader import ConfigurationReader
from .yaml_config_reader import YAMLConfigurationReader

__all__ = ["ConfigurationReader", "YAMLConfigurationReader"]
