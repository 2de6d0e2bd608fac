"""A builder class for configuring a run and its model."""

import dataclasses
import logging
from typing import Any

from disentangled_explainer.config.reader.yaml_config_reader import (
    YAMLConfigurationReader,
)
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.config.validation.config_validator import (
    BasicConfigurationValidator,
    ConfigurationValidator,
)
from disentangled_explainer.init.model_factory import (
    ModelFactory,
    parse_model_flag,
)


@dataclasses.dataclass
class Experiment:
    """A validated run configuration, ready to be used by the actions."""

    config: RunConfiguration
    model_factory: ModelFactory


class ExperimentBuilder:
    """A builder class for configuring a run and its model.

    Configuration values come from three sources, lowest precedence
    first: the dataclass defaults, a YAML file and a set of overrides
    (the command-line flags). The result is validated and packed,
    together with a model factory, in an :class:`Experiment`.

    Usage example:

    .. code-block:: python

        experiment = (
            ExperimentBuilder()
            .read_config_file("run.yaml")
            .apply_overrides({"seed": 7, "disentangle.n_samples": 16})
            .set_model_source("cmd:python serve_model.py")
            .validate_configuration()
            .build()
        )

        with experiment.model_factory.open_model() as model:
            ...

    """

    # (this is not a pytest test class)
    __test__ = False

    def __init__(self) -> None:
        """Initialise the builder with the default configuration."""
        # --------------------------------------------------------------
        # configuration

        self.config: RunConfiguration = RunConfiguration()
        """The configuration being built."""

        # --------------------------------------------------------------
        # internal tools

        self.logger: logging.Logger = logging.getLogger(__name__)

        self.config_reader: YAMLConfigurationReader = YAMLConfigurationReader(
            self.logger
        )
        """The tool used to read the configuration file."""

        self.config_validator: ConfigurationValidator = (
            BasicConfigurationValidator(self.logger)
        )
        """The tool used to validate the configuration."""

        self._config_validated = False

    def _log_info(self, message):
        """Log an informational message."""
        self.logger.info("ExperimentBuilder: %s", message)

    def _log_warning(self, message):
        """Log a warning message."""
        self.logger.warning("ExperimentBuilder: %s", message)

    def read_config_file(self, filepath: str) -> "ExperimentBuilder":
        """Read the configuration from a YAML file.

        :param filepath: The path to the YAML file.
        :returns: The current instance of ExperimentBuilder.
        :raises FileNotFoundError: If the YAML file does not exist.
        :raises yaml.YAMLError: If the YAML file contains errors.
        :raises ValueError: If the YAML content is not a mapping.
        """
        self._config_validated = False

        self._log_info(f"Reading configuration from file: {filepath}")
        self.config_reader.read_configuration_file(filepath)
        self.config = self.config_reader.get_run_configuration()

        self._log_info("Configuration read successfully.")
        return self

    def apply_overrides(
        self, overrides: dict[str, Any]
    ) -> "ExperimentBuilder":
        """Override single settings.

        Keys are top-level settings (``seed``) or ``section.attribute``
        paths (``surrogate.ridge_lambda``). None values are skipped, so
        unset command-line flags can be passed as they are.

        :param overrides: The values to set.
        :returns: The current instance of ExperimentBuilder.
        :raises ValueError: If a key matches no setting.
        """
        for key, value in overrides.items():
            if value is None:
                continue
            self._config_validated = False

            target: Any = self.config
            *sections, attribute = key.split(".")
            for section in sections:
                target = getattr(target, section, None)
                if not dataclasses.is_dataclass(target):
                    raise ValueError(f"Unknown configuration section: {key}")
            if attribute not in {f.name for f in dataclasses.fields(target)}:
                raise ValueError(f"Unknown configuration setting: {key}")

            setattr(target, attribute, value)
            self._log_info(f"Override: {key} = {value!r}")
        return self

    def set_model_source(self, flag: str | None) -> "ExperimentBuilder":
        """Select the model with a ``--model`` value.

        :param flag: ``builtin`` or ``cmd:<command line>`` (None keeps
            the current source).
        :returns: The current instance of ExperimentBuilder.
        :raises ValueError: If the value is not valid.
        """
        if flag is None:
            return self
        self._config_validated = False

        source, command = parse_model_flag(flag)
        self.config.model.source = source
        self.config.model.command = command
        self._log_info(f"Model source set to {source}.")
        return self

    def validate_configuration(self) -> "ExperimentBuilder":
        """Validate the configuration.

        Logs errors and warnings as necessary.

        :returns: The current instance of ExperimentBuilder.
        :raises ValueError: If the configuration is invalid, with the
            details of the errors.
        """
        self._config_validated = False
        self.config_validator.validate_top_level_settings(self.config)
        self.config_validator.validate_sections_configurations(self.config)

        self._config_validated = True
        return self

    def is_config_validated(self) -> bool:
        """Check if the configuration has been validated."""
        return self._config_validated

    def build(self) -> Experiment:
        """Build the experiment.

        :returns: The configuration and the factory of its model.
        """
        if not self.is_config_validated():
            self._log_warning(
                "You are building an experiment without validating "
                "its configuration. We strongly suggest to call "
                "validate_configuration() before building."
            )

        self._log_info("Building the experiment.")
        return Experiment(
            config=self.config,
            model_factory=ModelFactory(self.config.model, self.logger),
        )
