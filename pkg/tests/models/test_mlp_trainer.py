"""Unit tests for the training of the reference MLP."""

import numpy as np
import pytest
from assertpy import assert_that

from disentangled_explainer.data.synthetic_dataset import as_arrays, generate
from disentangled_explainer.models import (
    MlpModel,
    TrainingError,
    TrainingHyperparameters,
    gradient_check,
    mlp_train,
)
from disentangled_explainer.models.mlp_trainer import (
    accuracy,
    cross_entropy,
    train_on_arrays,
)
from disentangled_explainer.numerics.rng import Rng


class TestCrossEntropy:
    """Unit tests for the loss."""

    def test_uniform_logits(self):
        """Equal logits over two classes cost log(2)."""
        loss, gradient = cross_entropy(np.zeros((3, 2)), np.array([0, 1, 0]))

        assert_that(loss).is_close_to(np.log(2), 1e-12)
        np.testing.assert_allclose(
            gradient, [[-1 / 6, 1 / 6], [1 / 6, -1 / 6], [-1 / 6, 1 / 6]]
        )

    def test_large_logits_stay_finite(self):
        """The log-sum-exp is shifted to avoid overflows."""
        loss, _ = cross_entropy(np.array([[1000.0, -1000.0]]), np.array([1]))
        assert_that(loss).is_close_to(2000.0, 1e-9)


class TestMlpTrain:
    """Unit tests for mlp_train and its helpers."""

    def test_gradients_match_finite_differences(self):
        """Backpropagation agrees with central differences on every layer."""
        model = MlpModel.initialise(Rng(1))
        inputs, labels = as_arrays(generate(seed=1, n=100).train[:8])

        worst = gradient_check(model, inputs, labels, Rng(2))

        assert_that(worst).is_less_than(1e-4)

    def test_linearly_separable_subset_is_fitted(self):
        """100 points labelled by the sign of one input are all learned."""
        rng = np.random.default_rng(3)
        inputs = rng.normal(size=(100, 20))
        signs = np.where(np.arange(100) % 2 == 0, 1.0, -1.0)
        inputs[:, 0] = signs * (1.0 + np.abs(inputs[:, 0]))
        labels = (signs > 0).astype(np.int64)
        model = MlpModel.initialise(Rng(4))

        train_on_arrays(
            model,
            inputs,
            labels,
            TrainingHyperparameters(epochs=100, batch_size=10),
            Rng(5),
        )

        assert_that(accuracy(model, inputs, labels)).is_equal_to(1.0)

    def test_training_is_deterministic(self):
        """Two runs with the same seed give identical weights."""
        splits = generate(seed=6, n=200)
        hyperparameters = TrainingHyperparameters(epochs=2)

        first, first_report = mlp_train(splits, 7, hyperparameters)
        second, second_report = mlp_train(splits, 7, hyperparameters)

        for w1, w2 in zip(first.weights, second.weights):
            np.testing.assert_array_equal(w1, w2)
        assert_that(first_report.to_dict()).is_equal_to(
            second_report.to_dict()
        )

    def test_report_contents(self):
        """The report records the seed, the knobs and an epoch loss each."""
        _, report = mlp_train(
            generate(seed=8, n=100), 9, TrainingHyperparameters(epochs=3)
        )

        assert_that(report.seed).is_equal_to(9)
        assert_that(report.epoch_losses).is_length(3)
        assert_that(report.to_dict()["hyperparameters"]).contains_entry(
            {"epochs": 3}
        )
        for value in (
            report.train_accuracy,
            report.valid_accuracy,
            report.test_accuracy,
        ):
            assert_that(value).is_between(0.0, 1.0)

    def test_divergence_is_reported(self):
        """A non-finite loss stops the training with diagnostics."""
        inputs = np.ones((8, 20))
        inputs[3, 5] = np.nan
        model = MlpModel.initialise(Rng(10))

        with pytest.raises(TrainingError) as info:
            train_on_arrays(
                model,
                inputs,
                np.zeros(8, dtype=np.int64),
                TrainingHyperparameters(epochs=1, batch_size=8),
                Rng(11),
            )

        assert_that(info.value.diagnostics).contains_entry(
            {"epoch": 0}, {"step": 0}, {"last_finite_loss": None}
        )

    @pytest.mark.slow
    def test_reference_training_reaches_the_accuracy_target(self):
        """Default training on 100k points gets >= 95% test accuracy."""
        _, report = mlp_train(generate(seed=0, n=100_000), 0)

        assert_that(report.test_accuracy).is_greater_than_or_equal_to(0.95)
