"""Factory to build the model under explanation."""

import contextlib
import logging
from typing import Iterator

from disentangled_explainer.config.components_config import (
    ModelSourceConfiguration,
)
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.models.external_model import (
    ExternalModelSession,
)
from disentangled_explainer.models.mlp_model import MlpModel

MODEL_FLAG_BUILTIN = "builtin"
MODEL_FLAG_COMMAND_PREFIX = "cmd:"


def parse_model_flag(flag: str) -> tuple[str, str | None]:
    """Split a ``--model`` value into source and command.

    ``builtin`` selects the reference MLP, ``cmd:<command line>`` an
    external process.

    :return: The source name and the command (None for builtin).
    :raises ValueError: If the value is none of the two forms.
    """
    if flag == MODEL_FLAG_BUILTIN:
        return ModelSourceConfiguration.BUILTIN, None
    if flag.startswith(MODEL_FLAG_COMMAND_PREFIX):
        command = flag[len(MODEL_FLAG_COMMAND_PREFIX) :].strip()
        if not command:
            raise ValueError("The model command after 'cmd:' is empty.")
        return ModelSourceConfiguration.COMMAND, command
    raise ValueError(
        f"Unknown model source '{flag}' "
        "(expected 'builtin' or 'cmd:<command line>')."
    )


class ModelFactory:
    """Factory to build the model under explanation.

    Given the model section of the configuration, it loads the reference
    MLP from its file or starts an external model process.

    Main methods:

    - create_model: build the model (the caller owns external sessions);
    - open_model: context manager that closes external sessions on exit.
    """

    def __init__(
        self,
        config: ModelSourceConfiguration,
        logger: logging.Logger | None = None,
    ) -> None:
        """Initialise the factory with the model configuration.

        :param config: The model section of the run configuration.
        :param logger: The logger (module logger if None).
        """
        self.config = config
        self.logger = logger or logging.getLogger(__name__)

    def create_model(self) -> BlackBoxModel:
        """Create the configured model.

        :return: The loaded MLP, or a running external session.
        :raises FileNotFoundError: If the MLP file doesn't exist.
        :raises ValueError: If the MLP file is not valid.
        :raises GatewayError: If the external process fails its handshake.
        """
        if self.config.is_builtin:
            self.logger.info(
                "ModelFactory: loading the builtin MLP from %s",
                self.config.model_path,
            )
            return MlpModel.load(self.config.model_path)

        self.logger.info(
            "ModelFactory: starting the external model '%s'",
            self.config.command,
        )
        return ExternalModelSession(
            self.config.command,
            handshake_timeout=self.config.handshake_timeout,
            request_timeout=self.config.request_timeout,
            batch_size=self.config.batch_size,
        )

    @contextlib.contextmanager
    def open_model(self) -> Iterator[BlackBoxModel]:
        """Create the model and release it when done."""
        model = self.create_model()
        try:
            yield model
        finally:
            if isinstance(model, ExternalModelSession):
                model.close()
