"""Validators of the configuration sections."""

import abc
import logging
import numbers

from disentangled_explainer.config.components_config import (
    ModelSourceConfiguration,
    SectionConfiguration,
    SurrogateConfiguration,
    ValidationConfiguration,
)
from disentangled_explainer.config.validation.config_issue import (
    ConfigurationIssue,
    create_configuration_issue,
)


class SectionConfigurationValidator(abc.ABC):
    """A generic validator of configuration sections.

    Implement your own checks by subclassing this class and implementing
    :meth:`validate`, which scans a section and collects what it finds
    with :meth:`add_error` and :meth:`add_warning`.

    An instance can validate several sections in a row, accumulating
    the issues in ``errors_and_warnings``, until :meth:`reset` is
    called. After one or more runs, :meth:`is_valid` tells whether
    any critical issue was found.

    Sections a validator is not concerned with are simply skipped.
    """

    def __init__(self, logger: logging.Logger | None = None) -> None:
        super().__init__()

        self.errors_and_warnings: list[ConfigurationIssue] = []
        """The errors and warnings found during one or more validations."""

        self.logger = logger
        """An optional logger used to log the issues as they are found."""

        self._current_section: str | None = None

    def validate(self, config: SectionConfiguration) -> None:
        """Validate a section, collecting the issues it has.

        This method is not expected to return anything, nor to raise
        exceptions.

        :param config: The section to validate.
        """
        self._current_section = config.__class__.__name__
        try:
            self._validate(config)
        finally:
            self._current_section = None

    @abc.abstractmethod
    def _validate(self, config: SectionConfiguration) -> None:
        """The checks of the validator."""

    def reset(self) -> None:
        """Reset the validator, clearing the errors and warnings list."""
        self.errors_and_warnings = []

    def is_valid(self) -> bool:
        """Return True if there are no critical issues (i.e., errors)."""
        return not any(
            issue.is_critical() for issue in self.errors_and_warnings
        )

    # ----------------------------------------------
    # Utils methods to populate the errors list

    def add_error(self, message: str) -> None:
        """Add an error to the errors and warnings list."""
        self._add(create_configuration_issue(message, True, self._section))

    def add_warning(self, message: str) -> None:
        """Add a warning to the errors and warnings list."""
        self._add(create_configuration_issue(message, False, self._section))

    @property
    def _section(self) -> str | None:
        return self._current_section

    def _add(self, issue: ConfigurationIssue) -> None:
        self.errors_and_warnings.append(issue)
        if self.logger:
            issue.log(self.logger)

    def get_critical_errors(self) -> list[ConfigurationIssue]:
        """Return the critical errors found during the validation."""
        return [
            issue for issue in self.errors_and_warnings if issue.is_critical()
        ]


def _is_number(value) -> bool:
    """True for ints and floats, but not for booleans."""
    return not isinstance(value, bool) and isinstance(value, numbers.Real)


class PositiveValuesValidator(SectionConfigurationValidator):
    """Check that the numeric knobs of a section are strictly positive."""

    def _validate(self, config: SectionConfiguration) -> None:
        for attr in config.positive_attributes():
            value = getattr(config, attr, None)
            if not _is_number(value):
                self.add_error(
                    f"The attribute '{attr}' must be a number "
                    f"(got {value!r})."
                )
            elif value <= 0:
                self.add_error(
                    f"The attribute '{attr}' must be positive (got {value})."
                )


class ModelSourceValidator(SectionConfigurationValidator):
    """Check that the model comes from exactly one source."""

    def _validate(self, config: SectionConfiguration) -> None:
        if not isinstance(config, ModelSourceConfiguration):
            return

        sources = (
            ModelSourceConfiguration.BUILTIN,
            ModelSourceConfiguration.COMMAND,
        )
        if config.source not in sources:
            self.add_error(
                f"Unknown model source '{config.source}' "
                f"(expected one of {sources})."
            )
        elif config.is_builtin:
            if config.command:
                self.add_error(
                    "A command is set, but the model source is builtin: "
                    "choose exactly one model source."
                )
            if not config.model_path:
                self.add_error("The builtin model needs a 'model_path'.")
        elif not config.command:
            self.add_error("The 'cmd' model source needs a 'command'.")


class SurrogateConsistencyValidator(SectionConfigurationValidator):
    """Check the perturbation settings and the validation targets."""

    VALIDATION_THRESHOLDS = (
        "uc_min_correlation",
        "mi_min_correlation",
        "off_target_max_abs_correlation",
        "lime_min_correlation",
        "lime_max_correlation",
        "swap_uc_max_distance",
        "swap_min_ratio",
    )

    def _validate(self, config: SectionConfiguration) -> None:
        if isinstance(config, SurrogateConfiguration):
            self._validate_surrogate(config)
        elif isinstance(config, ValidationConfiguration):
            self._validate_validation(config)

    def _check_numbers(
        self, config: SectionConfiguration, attributes: tuple[str, ...]
    ) -> bool:
        """Report the attributes that are not numbers.

        :return: True if all the attributes are numbers.
        """
        valid = True
        for attr in attributes:
            value = getattr(config, attr)
            if not _is_number(value):
                self.add_error(
                    f"The attribute '{attr}' must be a number "
                    f"(got {value!r})."
                )
                valid = False
        return valid

    def _validate_surrogate(self, config: SurrogateConfiguration) -> None:
        if not self._check_numbers(
            config, ("keep_probability", "ridge_lambda")
        ):
            return

        if not 0 < config.keep_probability <= 1:
            self.add_error(
                "The keep probability must be in (0, 1] "
                f"(got {config.keep_probability})."
            )
        elif config.keep_probability == 1:
            self.add_warning(
                "With keep probability 1 no feature is ever masked: "
                "every surrogate will have zero weights."
            )
        if config.ridge_lambda < 0:
            self.add_error(
                f"The ridge penalty must be >= 0 (got {config.ridge_lambda})."
            )
        elif config.ridge_lambda == 0:
            self.add_warning(
                "Without a ridge penalty, some fits may be singular."
            )

    def _validate_validation(self, config: ValidationConfiguration) -> None:
        if (
            isinstance(config.explained_class, bool)
            or not isinstance(config.explained_class, numbers.Integral)
            or config.explained_class < 0
        ):
            self.add_error(
                "The explained class must be a class index "
                f"(got {config.explained_class!r})."
            )
        if not self._check_numbers(config, self.VALIDATION_THRESHOLDS):
            return
        if config.lime_min_correlation > config.lime_max_correlation:
            self.add_error("The plain surrogate correlation band is empty.")
