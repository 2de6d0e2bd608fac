"""Issues found while validating a run configuration."""

import abc
import logging


class ConfigurationIssue(abc.ABC):
    """An anomaly found in a run configuration.

    An issue is either critical (an error: the run can't start) or not
    (a warning: the run starts, but probably not as the user meant).
    Issues know how to log themselves.
    """

    def __init__(self, message: str, section: str | None = None) -> None:
        """Initialise the issue.

        :param message: What is wrong.
        :param section: The configuration section it was found in.
        """
        self.message = message
        """What is wrong."""

        self.section = section
        """The configuration section the issue was found in (if any)."""

    @abc.abstractmethod
    def is_critical(self) -> bool:
        """Return True if the issue is critical, False otherwise."""

    @abc.abstractmethod
    def log(self, logger: logging.Logger) -> None:
        """Log the issue using the provided logger."""

    def _located_message(self) -> str:
        if self.section:
            return f"[{self.section}] {self.message}"
        return self.message

    def __repr__(self) -> str:
        return str(self)


class ConfigurationError(ConfigurationIssue):
    """A critical issue found in the configuration."""

    def is_critical(self) -> bool:
        return True

    def log(self, logger: logging.Logger) -> None:
        logger.error(str(self))

    def __str__(self) -> str:
        return "CONFIGURATION ERROR: " + self._located_message()


class ConfigurationWarning(ConfigurationIssue):
    """A non-critical issue found in the configuration."""

    def is_critical(self) -> bool:
        return False

    def log(self, logger: logging.Logger) -> None:
        logger.warning(str(self))

    def __str__(self) -> str:
        return "CONFIGURATION WARNING: " + self._located_message()


def create_configuration_issue(
    message: str, is_critical: bool = True, section: str | None = None
) -> ConfigurationIssue:
    """Create an error or a warning about the configuration.

    :param message: What is wrong.
    :param is_critical: True for an error, False for a warning.
    :param section: The configuration section it was found in.
    """
    if is_critical:
        return ConfigurationError(message, section)
    return ConfigurationWarning(message, section)
