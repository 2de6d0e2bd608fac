"""A configuration reader that reads from a YAML file."""

import dataclasses
import logging

import yaml

from disentangled_explainer.config.components_config import (
    DisentangleConfiguration,
    ModelSourceConfiguration,
    SectionConfiguration,
    SurrogateConfiguration,
    TrainingConfiguration,
    ValidationConfiguration,
)
from disentangled_explainer.config.reader.config_reader import (
    ConfigurationReader,
)

TOP_LEVEL_KEYS = ("seed", "workers", "out", "data_dir")


class YAMLConfigurationReader(ConfigurationReader):
    """A configuration reader that reads from a YAML file.

    The YAML file has the following structure (every key is optional):

    .. code-block:: yaml

        seed: 7
        workers: 1
        out: "out"
        data_dir: "data"

        disentangle:
            n_samples: 32

        surrogate:
            lime_samples: 1000
            keep_probability: 0.5
            kernel_width: 0.25
            ridge_lambda: 0.001
            grid_rows: 4
            grid_cols: 4

        model:
            source: "builtin"  # or "cmd"
            model_path: "out/model.msgpack"
            command: "python my_model_server.py"  # when source is cmd
            handshake_timeout: 10

        training:
            epochs: 20
            accuracy_floor: 0.95

        validation:
            n_points: 200
            explained_class: 1

    Unknown keys are reported as warnings and ignored.
    """

    def __init__(self, logger: logging.Logger | None = None) -> None:
        super().__init__()
        self.filename: str | None = None
        """The path to the YAML file you read."""

        self.config_as_dict: dict = {}
        """The content of the YAML file as a dictionary."""

        self.unknown_keys: list[str] = []
        """Keys found in the file that don't match any setting."""

        self.logger = logger or logging.getLogger(__name__)

    # ------------------------------------------------------------------
    # File and dict-structure reading methods

    def read_configuration_file(self, filename: str) -> None:
        """Read the YAML file and store the content as a dictionary.

        Run this method before calling any other method that generates
        configurations.

        :param filename: The path to the YAML file you want to read
        :raises FileNotFoundError: If the file doesn't exist.
        :raises yaml.YAMLError: If the file is not a valid YAML file.
        :raises ValueError: If the file content is not a mapping.
        """
        self.filename = filename
        with open(filename, "r", encoding="utf-8") as stream:
            content = yaml.safe_load(stream)
        if content is None:
            content = {}
        if not isinstance(content, dict):
            raise ValueError(f"{filename} does not contain a mapping.")
        self.config_as_dict = content
        self.unknown_keys = []

        known = set(TOP_LEVEL_KEYS) | {
            "disentangle",
            "surrogate",
            "model",
            "training",
            "validation",
        }
        for key in content:
            if key not in known:
                self._report_unknown_key(str(key))

    def _report_unknown_key(self, key: str) -> None:
        self.unknown_keys.append(key)
        self.logger.warning(
            "Unknown configuration key '%s' in %s (ignored).",
            key,
            self.filename,
        )

    def _read_section(
        self, name: str, section_class: type[SectionConfiguration]
    ) -> SectionConfiguration | None:
        """Build a section from its dictionary, if the file has it.

        :param name: The name of the section in the file.
        :param section_class: The dataclass of the section.
        :return: The section, or None if the file doesn't have it.
        :raises ValueError: If the section is not a mapping.
        """
        section = self.config_as_dict.get(name)
        if section is None:
            return None
        if not isinstance(section, dict):
            raise ValueError(f"The '{name}' section must be a mapping.")

        field_names = {f.name for f in dataclasses.fields(section_class)}
        for key in section:
            if key not in field_names:
                self._report_unknown_key(f"{name}.{key}")
        return section_class(
            **{k: v for k, v in section.items() if k in field_names}
        )

    # ------------------------------------------------------------------
    # Section readers

    def get_top_level_settings(self) -> dict:
        return {
            key: self.config_as_dict[key]
            for key in TOP_LEVEL_KEYS
            if key in self.config_as_dict
        }

    def get_disentangle_configuration(
        self,
    ) -> DisentangleConfiguration | None:
        return self._read_section("disentangle", DisentangleConfiguration)

    def get_surrogate_configuration(self) -> SurrogateConfiguration | None:
        return self._read_section("surrogate", SurrogateConfiguration)

    def get_model_configuration(self) -> ModelSourceConfiguration | None:
        return self._read_section("model", ModelSourceConfiguration)

    def get_training_configuration(self) -> TrainingConfiguration | None:
        return self._read_section("training", TrainingConfiguration)

    def get_validation_configuration(
        self,
    ) -> ValidationConfiguration | None:
        return self._read_section("validation", ValidationConfiguration)
