"""Unit tests for the ConfigurationIssue hierarchy."""

import logging

from assertpy import assert_that

from disentangled_explainer.config.validation.config_issue import (
    ConfigurationError,
    ConfigurationWarning,
    create_configuration_issue,
)


class TestConfigurationIssue:
    """Unit tests for the ConfigurationIssue hierarchy."""

    @staticmethod
    def test_configuration_error_is_critical() -> None:
        """An error is critical, a warning is not."""
        assert_that(ConfigurationError("bad").is_critical()).is_true()
        assert_that(ConfigurationWarning("odd").is_critical()).is_false()

    @staticmethod
    def test_issues_log_at_their_level(caplog) -> None:
        """Errors log as errors, warnings as warnings."""
        with caplog.at_level(logging.WARNING):
            ConfigurationError("bad").log(logging.getLogger())
            ConfigurationWarning("odd").log(logging.getLogger())

        levels = [record.levelno for record in caplog.records]
        assert_that(levels).is_equal_to([logging.ERROR, logging.WARNING])
        assert_that(caplog.text).contains(
            "CONFIGURATION ERROR: bad", "CONFIGURATION WARNING: odd"
        )

    @staticmethod
    def test_message_names_the_section() -> None:
        """When known, the section prefixes the message."""
        issue = ConfigurationWarning("too few", "SurrogateConfiguration")

        assert_that(str(issue)).is_equal_to(
            "CONFIGURATION WARNING: [SurrogateConfiguration] too few"
        )

    @staticmethod
    def test_create_configuration_issue() -> None:
        """The factory picks the class from the criticality."""
        assert_that(
            create_configuration_issue("bad", is_critical=True)
        ).is_instance_of(ConfigurationError)
        assert_that(
            create_configuration_issue("odd", is_critical=False)
        ).is_instance_of(ConfigurationWarning)
