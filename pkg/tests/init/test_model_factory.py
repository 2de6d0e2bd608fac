"""Unit tests for ModelFactory and the model flag."""

import sys

import numpy as np
import pytest
from assertpy import assert_that

from disentangled_explainer.config import ModelSourceConfiguration
from disentangled_explainer.init import ModelFactory, parse_model_flag
from disentangled_explainer.models import (
    ExternalModelSession,
    MlpModel,
    ModalityValue,
)
from disentangled_explainer.numerics.rng import Rng
from tests.models.test_external_model import STUB_MODEL


class TestParseModelFlag:
    """Unit tests for parse_model_flag."""

    def test_builtin(self):
        """builtin has no command."""
        assert_that(parse_model_flag("builtin")).is_equal_to(
            ("builtin", None)
        )

    def test_command(self):
        """Everything after cmd: is the command line."""
        assert_that(parse_model_flag("cmd: ./serve --fast ")).is_equal_to(
            ("cmd", "./serve --fast")
        )

    @pytest.mark.parametrize("flag", ["cmd:", "cmd:   ", "mlp", ""])
    def test_invalid_flags(self, flag):
        """Empty commands and unknown sources are rejected."""
        with pytest.raises(ValueError):
            parse_model_flag(flag)


class TestModelFactory:
    """Unit tests for ModelFactory."""

    def test_builtin_model_is_loaded_from_its_file(self, tmp_path):
        """The builtin source reads the saved MLP."""
        path = tmp_path / "model.msgpack"
        saved = MlpModel.initialise(Rng(3), (20, 8, 2))
        saved.save(path)
        factory = ModelFactory(ModelSourceConfiguration(model_path=str(path)))

        with factory.open_model() as model:
            assert_that(model).is_instance_of(MlpModel)
            for saved_weights, loaded_weights in zip(
                saved.weights, model.weights
            ):
                np.testing.assert_array_equal(loaded_weights, saved_weights)

    def test_missing_model_file(self, tmp_path):
        """A builtin model that was never trained can't be loaded."""
        factory = ModelFactory(
            ModelSourceConfiguration(model_path=str(tmp_path / "none"))
        )
        with pytest.raises(FileNotFoundError):
            factory.create_model()

    def test_external_model_is_closed_on_exit(self):
        """open_model closes the external session it started."""
        factory = ModelFactory(
            ModelSourceConfiguration(
                source="cmd",
                model_path=None,
                command=f"{sys.executable} {STUB_MODEL} additive",
                handshake_timeout=30,
            )
        )

        with factory.open_model() as model:
            assert_that(model).is_instance_of(ExternalModelSession)
            logits = model.evaluate(
                ModalityValue.dense([1.0]), ModalityValue.dense([2.0])
            )
            np.testing.assert_allclose(logits, [-3.0, 3.0])

        assert_that(model.dead).is_true()
