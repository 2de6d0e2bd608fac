"""A validator for the whole run configuration."""

import abc
import logging

from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.config.validation.section_config_validator import (  # pylint: disable=line-too-long # noqa: E501
    ModelSourceValidator,
    PositiveValuesValidator,
    SectionConfigurationValidator,
    SurrogateConsistencyValidator,
)
from disentangled_explainer.numerics.rng import MAX_SEED


class ConfigurationValidator(abc.ABC):
    """A generic validator for the whole run configuration.

    It provides interfaces for two validation steps:

    - a step to validate the top-level settings (seed, workers);
    - a step to validate the individual sections.

    It provides also a minimal log.info utility to log the validation
    steps.
    """

    def __init__(self, logger: logging.Logger | None = None) -> None:
        super().__init__()

        self.logger = logger
        """An optional logger used to log the errors and warnings, while
        they are found during the validation."""

        self.logger_prefix = "CONFIG VALIDATION: "
        """The prefix used to log the validation messages."""

    @abc.abstractmethod
    def validate_top_level_settings(self, config: RunConfiguration) -> None:
        """Validate the settings that don't belong to a section.

        :raises ValueError: If any critical error is found.
        """

    @abc.abstractmethod
    def validate_sections_configurations(
        self, config: RunConfiguration
    ) -> None:
        """Validate the individual sections with the configured
        validators.

        :raises ValueError: If any critical error is found.
        """

    def _log_info(self, message: str) -> None:
        """Log an info message if a logger is available."""
        if self.logger:
            self.logger.info(self.logger_prefix + message)


class BasicConfigurationValidator(ConfigurationValidator):
    """The configuration validator used by the command line.

    This validator:

    - checks the seed is a 64-bit unsigned integer and workers a
      positive integer;
    - ensures every numeric knob that must be positive is positive;
    - ensures the model comes from exactly one source;
    - checks the consistency of the perturbation settings and of the
      validation thresholds.
    """

    def __init__(self, logger: logging.Logger | None = None) -> None:
        super().__init__(logger)

        self.section_validators: list[SectionConfigurationValidator] = [
            PositiveValuesValidator(logger),
            ModelSourceValidator(logger),
            SurrogateConsistencyValidator(logger),
        ]
        """The validators used to validate the sections."""

    def validate_top_level_settings(self, config: RunConfiguration) -> None:
        """Validate seed and workers."""
        self._log_info("Checking the top-level settings.")

        if (
            isinstance(config.seed, bool)
            or not isinstance(config.seed, int)
            or not 0 <= config.seed <= MAX_SEED
        ):
            raise ValueError(
                f"The seed must be a 64-bit unsigned integer "
                f"(got {config.seed!r})."
            )
        if (
            isinstance(config.workers, bool)
            or not isinstance(config.workers, int)
            or config.workers < 1
        ):
            raise ValueError(
                f"Workers must be a positive integer (got {config.workers!r})."
            )

        self._log_info("Top-level settings: OK.")

    def validate_sections_configurations(
        self, config: RunConfiguration
    ) -> None:
        """Validate each section with every section validator."""
        self._log_info("Validating the configuration sections contents.")

        for validator in self.section_validators:
            self._apply_section_validator(validator, config)

        self._log_info("All the configuration sections are valid.")

    def _apply_section_validator(
        self,
        validator: SectionConfigurationValidator,
        config: RunConfiguration,
    ) -> None:
        """Apply a validator to all the sections.

        :param validator: The validator to apply.
        :raises ValueError: If the validator found critical errors.
        """
        self._log_info(
            "Validating all the sections "
            f"using {validator.__class__.__name__}."
        )

        validator.reset()
        for section in config.get_sections():
            validator.validate(section)

        if not validator.is_valid():
            raise ValueError(
                "Configuration validation "
                f"using {validator.__class__.__name__} "
                "failed with the following critical errors:\n"
                + "\n".join(
                    [str(error) for error in validator.get_critical_errors()]
                )
            )

        self._log_info(
            f"Configuration validation using {validator.__class__.__name__} "
            "succeeded on all sections."
        )
