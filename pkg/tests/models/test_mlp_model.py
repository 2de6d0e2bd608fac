"""Unit tests for the reference MLP."""

import msgpack
import msgpack_numpy
import numpy as np
import pytest
from assertpy import assert_that

from disentangled_explainer.data.synthetic_dataset import as_arrays, generate
from disentangled_explainer.models import (
    LAYER_SIZES,
    MlpModel,
    ModalityValue,
    mlp_forward,
)
from disentangled_explainer.numerics.rng import Rng


@pytest.fixture
def model() -> MlpModel:
    """A randomly initialised reference network."""
    return MlpModel.initialise(Rng(0))


def small_network() -> MlpModel:
    """A 2 -> 2 -> 1 network that can be traced by hand."""
    return MlpModel(
        [np.array([[1.0, 0.0], [1.0, 1.0]]), np.array([[2.0], [7.0]])],
        [np.array([0.0, -5.0]), np.array([1.0])],
    )


class TestMlpModel:
    """Unit tests for MlpModel and mlp_forward."""

    def test_reference_architecture(self, model):
        """20 inputs, hidden layers of 100, 200 and 10, 2 logits."""
        assert_that(model.layer_sizes).is_equal_to(LAYER_SIZES)
        assert_that(model.num_classes).is_equal_to(2)

    def test_zero_network_gives_zero_logits(self):
        """All-zero weights and biases give (0, 0)."""
        logits = mlp_forward(MlpModel.zeros(), np.ones(10), np.ones(10))
        np.testing.assert_array_equal(logits, [0.0, 0.0])

    def test_zero_weights_give_the_output_biases(self):
        """With zero weights only the last biases reach the logits."""
        network = MlpModel.zeros()
        network.biases[-1][:] = [0.25, -1.5]
        pairs = [
            (ModalityValue.dense(np.full(10, v)), ModalityValue.dense(-x))
            for v, x in [(1.0, np.ones(10)), (-3.0, np.arange(10.0))]
        ]

        np.testing.assert_array_equal(
            network.evaluate_batch(pairs), [[0.25, -1.5], [0.25, -1.5]]
        )

    def test_hand_traced_forward_pass(self):
        """Inputs (1, 2): hidden (3, 2 - 5) -> (3, 0), output 2*3 + 1."""
        logits = mlp_forward(small_network(), [1.0], [2.0])
        np.testing.assert_array_equal(logits, [7.0])

    def test_dead_rectifier_contributes_nothing(self):
        """Changing the weight out of a dead unit changes nothing."""
        network = small_network()
        before = mlp_forward(network, [1.0], [2.0])
        network.weights[1][1, 0] = -100.0

        np.testing.assert_array_equal(
            mlp_forward(network, [1.0], [2.0]), before
        )

    def test_doubling_the_last_layer_doubles_the_logits(self, model):
        """With zero output biases the logits are linear in W_out."""
        inputs, _ = as_arrays(generate(seed=1, n=20).test)
        before = model.forward(inputs)
        model.weights[-1] *= 2

        np.testing.assert_allclose(model.forward(inputs), 2 * before)

    def test_batch_evaluation_matches_mlp_forward(self, model):
        """evaluate_batch concatenates d1 and d2."""
        point = generate(seed=2, n=10).train[0]
        logits = model.evaluate(
            ModalityValue.dense(point.d1), ModalityValue.dense(point.d2)
        )

        np.testing.assert_array_equal(
            logits, mlp_forward(model, point.d1, point.d2)
        )

    def test_wrong_input_size_is_rejected(self, model):
        """Two 3-vectors don't fit a 20-input network."""
        pair = (ModalityValue.dense(np.ones(3)), ModalityValue.dense([1.0]))
        with pytest.raises(ValueError):
            model.evaluate_batch([pair])

    def test_inconsistent_layers_are_rejected(self):
        """Layer shapes must chain."""
        with pytest.raises(ValueError):
            MlpModel(
                [np.zeros((2, 3)), np.zeros((4, 1))],
                [np.zeros(3), np.zeros(1)],
            )

    def test_saved_model_gives_identical_logits(self, model, tmp_path):
        """A reloaded model reproduces the logits bit for bit."""
        inputs, _ = as_arrays(generate(seed=3, n=1000).test)
        path = tmp_path / "model.msgpack"
        model.save(path)

        reloaded = MlpModel.load(path)

        assert_that(len(inputs)).is_equal_to(100)
        np.testing.assert_array_equal(
            reloaded.forward(inputs), model.forward(inputs)
        )

    def test_saved_model_records_the_configuration(self, model, tmp_path):
        """The run configuration is stored next to the weights."""
        path = tmp_path / "model.msgpack"
        model.save(path, {"seed": 5, "training": {"epochs": 3}})

        content = msgpack.unpackb(
            path.read_bytes(), object_hook=msgpack_numpy.decode, raw=False
        )

        assert_that(content["config"]).is_equal_to(
            {"seed": 5, "training": {"epochs": 3}}
        )
        assert_that(MlpModel.load(path).layer_sizes).is_equal_to(
            model.layer_sizes
        )

    def test_loading_a_foreign_file(self, tmp_path):
        """A file that isn't a model file is rejected."""
        path = tmp_path / "model.msgpack"
        path.write_bytes(b"\x81\xa3foo\xa3bar")

        with pytest.raises(ValueError):
            MlpModel.load(path)

    def test_copy_is_independent(self, model):
        """Updating a copy leaves the original untouched."""
        copy = model.copy()
        copy.weights[0][0, 0] += 1.0

        assert_that(float(copy.weights[0][0, 0])).is_not_equal_to(
            float(model.weights[0][0, 0])
        )
