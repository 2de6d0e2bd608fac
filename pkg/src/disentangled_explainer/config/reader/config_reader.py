"""The interface of the run configuration readers."""

import abc

from disentangled_explainer.config.components_config import (
    DisentangleConfiguration,
    ModelSourceConfiguration,
    SurrogateConfiguration,
    TrainingConfiguration,
    ValidationConfiguration,
)
from disentangled_explainer.config.run_config import RunConfiguration


class ConfigurationReader(abc.ABC):
    """A reader that collects a run configuration from somewhere.

    The configuration is made of some top-level settings (seed, workers,
    paths) and of the sections:

    - disentangle
    - surrogate
    - model
    - training
    - validation

    None of them is mandatory: what is missing keeps its default value.
    The correctness of the values is not checked here, since it is
    delegated to a separate validator.
    """

    # ------------------------------------------------------------------
    # Main access point (that can be used to read all the configurations)

    def get_run_configuration(self) -> RunConfiguration:
        """Get the whole run configuration.

        :return: The configuration found by the reader, completed with
            default values.
        """
        return RunConfiguration(
            **self.get_top_level_settings(),
            disentangle=self.get_disentangle_configuration()
            or DisentangleConfiguration(),
            surrogate=self.get_surrogate_configuration()
            or SurrogateConfiguration(),
            model=self.get_model_configuration()
            or ModelSourceConfiguration(),
            training=self.get_training_configuration()
            or TrainingConfiguration(),
            validation=self.get_validation_configuration()
            or ValidationConfiguration(),
        )

    # ------------------------------------------------------------------
    # Section readers

    @abc.abstractmethod
    def get_top_level_settings(self) -> dict:
        """Get the top-level settings (``seed``, ``workers``, ``out``,
        ``data_dir``) that were found."""

    @abc.abstractmethod
    def get_disentangle_configuration(
        self,
    ) -> DisentangleConfiguration | None:
        """Get the disentangle section (if any)."""

    @abc.abstractmethod
    def get_surrogate_configuration(self) -> SurrogateConfiguration | None:
        """Get the surrogate section (if any)."""

    @abc.abstractmethod
    def get_model_configuration(self) -> ModelSourceConfiguration | None:
        """Get the model section (if any)."""

    @abc.abstractmethod
    def get_training_configuration(self) -> TrainingConfiguration | None:
        """Get the training section (if any)."""

    @abc.abstractmethod
    def get_validation_configuration(
        self,
    ) -> ValidationConfiguration | None:
        """Get the validation section (if any)."""
