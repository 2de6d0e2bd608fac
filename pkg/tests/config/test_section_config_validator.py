"""Unit tests for the section validators."""

from unittest.mock import Mock

from assertpy import assert_that

from disentangled_explainer.config import (
    DisentangleConfiguration,
    ModelSourceConfiguration,
    SurrogateConfiguration,
    TrainingConfiguration,
    ValidationConfiguration,
)
from disentangled_explainer.config.validation.config_issue import (
    ConfigurationError,
    ConfigurationWarning,
)
from disentangled_explainer.config.validation.section_config_validator import (  # pylint: disable=line-too-long # noqa: E501
    ModelSourceValidator,
    PositiveValuesValidator,
    SectionConfigurationValidator,
    SurrogateConsistencyValidator,
)


class DummyValidator(SectionConfigurationValidator):
    """A validator that checks nothing."""

    def _validate(self, config):
        """Nothing to check."""


class TestSectionConfigurationValidator:
    """The base validator collects, logs and resets its issues."""

    def test_errors_make_the_validator_invalid(self):
        """Warnings are fine, errors are not."""
        validator = DummyValidator()
        validator.add_warning("odd")
        assert_that(validator.is_valid()).is_true()

        validator.add_error("bad")

        assert_that(validator.is_valid()).is_false()
        assert_that(validator.get_critical_errors()).is_length(1)
        assert_that(validator.get_critical_errors()[0]).is_instance_of(
            ConfigurationError
        )

    def test_reset_clears_errors_and_warnings(self):
        """Resetting the validator clears the issues."""
        validator = DummyValidator()
        validator.add_error("bad")

        validator.reset()

        assert_that(validator.errors_and_warnings).is_empty()

    def test_issues_are_logged_when_a_logger_is_available(self):
        """Every issue is logged through the given logger."""
        logger = Mock()
        validator = DummyValidator(logger)

        validator.add_error("bad")
        validator.add_warning("odd")

        logger.error.assert_called_once_with("CONFIGURATION ERROR: bad")
        logger.warning.assert_called_once_with("CONFIGURATION WARNING: odd")


class TestPositiveValuesValidator:
    """Unit tests for PositiveValuesValidator."""

    def test_defaults_are_positive(self):
        """No section has a non-positive default."""
        validator = PositiveValuesValidator()
        for section in (
            DisentangleConfiguration(),
            SurrogateConfiguration(),
            ModelSourceConfiguration(),
            TrainingConfiguration(),
            ValidationConfiguration(),
        ):
            validator.validate(section)

        assert_that(validator.errors_and_warnings).is_empty()

    def test_zero_and_non_numbers_are_errors(self):
        """Both a zero and a string are rejected, naming the section."""
        validator = PositiveValuesValidator()

        validator.validate(DisentangleConfiguration(n_samples=0))
        validator.validate(TrainingConfiguration(epochs="many"))

        messages = [str(issue) for issue in validator.errors_and_warnings]
        assert_that(messages).is_length(2)
        assert_that(messages[0]).contains(
            "[DisentangleConfiguration]", "n_samples"
        )
        assert_that(messages[1]).contains("must be a number")


class TestModelSourceValidator:
    """Unit tests for ModelSourceValidator."""

    def test_builtin_with_a_command_is_ambiguous(self):
        """Exactly one model source must be configured."""
        validator = ModelSourceValidator()

        validator.validate(ModelSourceConfiguration(command="serve"))

        assert_that(validator.is_valid()).is_false()

    def test_unknown_source(self):
        """Only builtin and cmd are known."""
        validator = ModelSourceValidator()

        validator.validate(ModelSourceConfiguration(source="http"))

        assert_that(validator.is_valid()).is_false()

    def test_cmd_with_a_command_is_valid(self):
        """An external model needs only its command."""
        validator = ModelSourceValidator()

        validator.validate(
            ModelSourceConfiguration(source="cmd", command="serve")
        )

        assert_that(validator.errors_and_warnings).is_empty()

    def test_other_sections_are_skipped(self):
        """Sections that aren't model sources aren't checked."""
        validator = ModelSourceValidator()
        validator.validate(SurrogateConfiguration(keep_probability=3))
        assert_that(validator.errors_and_warnings).is_empty()


class TestSurrogateConsistencyValidator:
    """Unit tests for SurrogateConsistencyValidator."""

    def test_keep_probability_above_one_is_an_error(self):
        """The keep probability is a probability."""
        validator = SurrogateConsistencyValidator()
        validator.validate(SurrogateConfiguration(keep_probability=1.5))
        assert_that(validator.is_valid()).is_false()

    def test_nothing_masked_is_a_warning(self):
        """A keep probability of 1 is allowed but useless."""
        validator = SurrogateConsistencyValidator()

        validator.validate(SurrogateConfiguration(keep_probability=1.0))

        assert_that(validator.is_valid()).is_true()
        assert_that(validator.errors_and_warnings[0]).is_instance_of(
            ConfigurationWarning
        )

    def test_negative_ridge_penalty_is_an_error(self):
        """The ridge penalty can't be negative."""
        validator = SurrogateConsistencyValidator()
        validator.validate(SurrogateConfiguration(ridge_lambda=-1.0))
        assert_that(validator.is_valid()).is_false()

    def test_validation_thresholds(self):
        """An empty correlation band and a negative class are errors."""
        validator = SurrogateConsistencyValidator()

        validator.validate(
            ValidationConfiguration(
                explained_class=-1,
                lime_min_correlation=0.9,
                lime_max_correlation=0.4,
            )
        )

        assert_that(validator.get_critical_errors()).is_length(2)

    def test_text_values_are_reported_not_compared(self):
        """A quoted number in the YAML is an issue, not a crash."""
        validator = SurrogateConsistencyValidator()

        validator.validate(
            SurrogateConfiguration(ridge_lambda="0.1", keep_probability="1")
        )

        errors = validator.get_critical_errors()
        assert_that(errors).is_length(2)
        assert_that(errors[0].message).contains("ridge_lambda")

    def test_text_thresholds_and_class_are_errors(self):
        """Thresholds must be numbers and the class an integer."""
        validator = SurrogateConsistencyValidator()

        validator.validate(
            ValidationConfiguration(
                explained_class=1.5, lime_max_correlation="high"
            )
        )

        assert_that(validator.get_critical_errors()).is_length(2)
