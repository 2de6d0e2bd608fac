"""Training of the reference MLP on the synthetic dataset.

The recipe is softmax cross-entropy minimised by mini-batch gradient
descent with momentum. The learning rate is halved after half and after
three quarters of the epochs. Training is deterministic for a given
seed: initial weights and shuffling orders come from streams derived
from it.
"""

import logging
from dataclasses import asdict, dataclass, field

import numpy as np
from tqdm import tqdm

from disentangled_explainer.data.synthetic_dataset import (
    DatasetSplits,
    as_arrays,
)
from disentangled_explainer.models.mlp_model import LAYER_SIZES, MlpModel
from disentangled_explainer.numerics.rng import Rng, derive_seed

_logger = logging.getLogger(__name__)


class TrainingError(Exception):
    """Training diverged.

    :attr:`diagnostics` describes where (epoch, step, learning rate and
    the last finite loss).
    """

    def __init__(self, message: str, diagnostics: dict) -> None:
        super().__init__(f"{message} Diagnostics: {diagnostics}")
        self.diagnostics = diagnostics


@dataclass
class TrainingHyperparameters:
    """The knobs of :func:`mlp_train`."""

    epochs: int = 20
    batch_size: int = 64
    learning_rate: float = 0.01
    momentum: float = 0.9


@dataclass
class TrainingReport:
    """Accuracies and losses of a training run."""

    seed: int
    hyperparameters: TrainingHyperparameters
    train_accuracy: float = 0.0
    valid_accuracy: float = 0.0
    test_accuracy: float = 0.0
    epoch_losses: list[float] = field(default_factory=list)
    """Mean training loss of each epoch."""

    def to_dict(self) -> dict:
        return asdict(self)


# ----------------------------------------------------------------------
# Loss


def cross_entropy(
    logits: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray]:
    """Mean softmax cross-entropy and its gradient wrt the logits.

    :param logits: B × C logits.
    :param labels: B integer labels.
    :return: The mean loss and the B × C gradient.
    """
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_probabilities = shifted - np.log(
        np.exp(shifted).sum(axis=1, keepdims=True)
    )
    batch = np.arange(len(labels))
    loss = float(-log_probabilities[batch, labels].mean())
    gradient = np.exp(log_probabilities)
    gradient[batch, labels] -= 1.0
    return loss, gradient / len(labels)


def accuracy(model: MlpModel, inputs: np.ndarray, labels: np.ndarray) -> float:
    """Fraction of inputs whose argmax logit equals the label."""
    if len(labels) == 0:
        return 0.0
    predictions = np.argmax(model.forward(inputs), axis=1)
    return float(np.mean(predictions == labels))


# ----------------------------------------------------------------------
# Training


def train_on_arrays(
    model: MlpModel,
    inputs: np.ndarray,
    labels: np.ndarray,
    hyperparameters: TrainingHyperparameters,
    rng: Rng,
    show_progress: bool = False,
) -> list[float]:
    """Train a model in place on an input matrix.

    :param model: The model to train (updated in place).
    :param inputs: M × input_size inputs.
    :param labels: M integer labels.
    :param hyperparameters: The training knobs.
    :param rng: The stream the shuffling orders are drawn from.
    :param show_progress: Show a progress bar over the epochs.
    :return: The mean loss of each epoch.
    :raises TrainingError: If the loss becomes non-finite.
    """
    velocities_w = [np.zeros_like(w) for w in model.weights]
    velocities_b = [np.zeros_like(b) for b in model.biases]
    epoch_losses: list[float] = []
    last_finite_loss = None
    step = 0

    epochs = range(hyperparameters.epochs)
    for epoch in tqdm(epochs, desc="training", disable=not show_progress):
        learning_rate = hyperparameters.learning_rate
        if epoch >= hyperparameters.epochs // 2:
            learning_rate /= 2
        if epoch >= (3 * hyperparameters.epochs) // 4:
            learning_rate /= 2

        order = rng.permutation(len(labels))
        losses = []
        for start in range(0, len(labels), hyperparameters.batch_size):
            batch = order[start : start + hyperparameters.batch_size]
            logits, cache = model.forward_with_cache(inputs[batch])
            loss, grad_logits = cross_entropy(logits, labels[batch])
            if not np.isfinite(loss):
                raise TrainingError(
                    "The training loss is not finite.",
                    {
                        "epoch": epoch,
                        "step": step,
                        "learning_rate": learning_rate,
                        "last_finite_loss": last_finite_loss,
                    },
                )
            last_finite_loss = loss
            losses.append(loss)

            grad_w, grad_b = model.backward(cache, grad_logits)
            for index in range(len(model.weights)):
                velocities_w[index] *= hyperparameters.momentum
                velocities_w[index] -= learning_rate * grad_w[index]
                velocities_b[index] *= hyperparameters.momentum
                velocities_b[index] -= learning_rate * grad_b[index]
                model.weights[index] += velocities_w[index]
                model.biases[index] += velocities_b[index]
            step += 1

        epoch_losses.append(float(np.mean(losses)))
        _logger.debug("Epoch %d: loss=%.6f", epoch, epoch_losses[-1])

    return epoch_losses


def mlp_train(
    splits: DatasetSplits,
    seed: int,
    hyperparameters: TrainingHyperparameters | None = None,
    show_progress: bool = False,
) -> tuple[MlpModel, TrainingReport]:
    """Train the reference MLP on the synthetic dataset.

    :param splits: The dataset splits (the model is trained on
        ``train``, the other splits are only measured).
    :param seed: The training seed.
    :param hyperparameters: The training knobs (defaults if None).
    :param show_progress: Show a progress bar over the epochs.
    :return: The trained model and its accuracy report.
    :raises TrainingError: If the training diverges.
    """
    hyperparameters = hyperparameters or TrainingHyperparameters()
    model = MlpModel.initialise(
        Rng(derive_seed(seed, "mlp-init")), LAYER_SIZES
    )
    train_inputs, train_labels = as_arrays(splits.train)
    if len(train_labels) == 0:
        raise ValueError("The train split is empty.")

    _logger.info(
        "Training %s on %d points (seed=%d, %s)",
        model.layer_sizes,
        len(train_labels),
        seed,
        hyperparameters,
    )
    epoch_losses = train_on_arrays(
        model,
        train_inputs,
        train_labels,
        hyperparameters,
        Rng(derive_seed(seed, "mlp-shuffle")),
        show_progress=show_progress,
    )

    report = TrainingReport(
        seed=seed,
        hyperparameters=hyperparameters,
        epoch_losses=epoch_losses,
    )
    report.train_accuracy = accuracy(model, train_inputs, train_labels)
    report.valid_accuracy = accuracy(model, *as_arrays(splits.valid))
    report.test_accuracy = accuracy(model, *as_arrays(splits.test))
    _logger.info(
        "Training done: train=%.4f valid=%.4f test=%.4f",
        report.train_accuracy,
        report.valid_accuracy,
        report.test_accuracy,
    )
    return model, report


# ----------------------------------------------------------------------
# Gradient check


def gradient_check(
    model: MlpModel,
    inputs: np.ndarray,
    labels: np.ndarray,
    rng: Rng,
    coordinates_per_layer: int = 10,
    epsilon: float = 1e-6,
) -> float:
    """Compare backpropagation with central finite differences.

    For every layer, ``coordinates_per_layer`` random weight coordinates
    are perturbed by ``±epsilon`` and the difference quotient of the
    cross-entropy is compared with the analytic gradient.

    :return: The largest relative error
        ``|a - n| / max(|a|, |n|, 1e-5)`` over all checked coordinates.
    """
    logits, cache = model.forward_with_cache(inputs)
    _, grad_logits = cross_entropy(logits, labels)
    grad_w, _ = model.backward(cache, grad_logits)

    worst = 0.0
    for layer, weight in enumerate(model.weights):
        flat = weight.reshape(-1)
        for position in rng.choice(flat.size, coordinates_per_layer):
            original = flat[position]
            flat[position] = original + epsilon
            loss_plus, _ = cross_entropy(model.forward(inputs), labels)
            flat[position] = original - epsilon
            loss_minus, _ = cross_entropy(model.forward(inputs), labels)
            flat[position] = original

            numeric = (loss_plus - loss_minus) / (2 * epsilon)
            analytic = grad_w[layer].reshape(-1)[position]
            error = abs(analytic - numeric) / max(
                abs(analytic), abs(numeric), 1e-5
            )
            worst = max(worst, error)
    return worst
