"""The reference in-process model: a rectifier MLP on the synthetic task.

The network reads the concatenation of the two 10-dimensional modality
vectors and returns two pre-softmax logits. Hidden layers use the
rectifier, the output layer is linear. Everything is computed in double
precision, so analytic gradients can be checked against finite
differences.
"""

import logging
from pathlib import Path
from typing import Sequence

import msgpack
import msgpack_numpy
import numpy as np

from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.models.modality_value import (
    ModalityKind,
    ModalityPair,
)
from disentangled_explainer.numerics.rng import Rng

LAYER_SIZES = (20, 100, 200, 10, 2)
"""Input, hidden and output sizes of the reference network."""

MODEL_FILE_FORMAT = "mlp"
MODEL_FILE_VERSION = 1

_logger = logging.getLogger(__name__)


class ForwardCache:
    """What a forward pass keeps to run the backward pass."""

    def __init__(self, inputs: np.ndarray) -> None:
        self.activations: list[np.ndarray] = [inputs]
        """The input of each layer (the first is the network input)."""

        self.pre_activations: list[np.ndarray] = []
        """The affine output of each layer, before the rectifier."""


class MlpModel(BlackBoxModel):
    """A fully connected rectifier network.

    ``weights[l]`` has shape ``(layer_sizes[l], layer_sizes[l + 1])``
    and ``biases[l]`` has shape ``(layer_sizes[l + 1],)``.

    Two dense modality values of size ``d1`` and ``d2`` are evaluated
    on their concatenation, so ``d1 + d2`` must equal the input size.
    """

    modality_kinds = (ModalityKind.DENSE, ModalityKind.DENSE)

    def __init__(
        self, weights: list[np.ndarray], biases: list[np.ndarray]
    ) -> None:
        if len(weights) != len(biases) or not weights:
            raise ValueError("There must be one bias vector per layer.")
        for index, (weight, bias) in enumerate(zip(weights, biases)):
            if weight.ndim != 2 or bias.shape != (weight.shape[1],):
                raise ValueError(f"Layer {index} has inconsistent shapes.")
            if index and weight.shape[0] != weights[index - 1].shape[1]:
                raise ValueError(
                    f"Layer {index} does not match the previous layer."
                )
        self.weights = [np.asarray(w, dtype=np.float64) for w in weights]
        self.biases = [np.asarray(b, dtype=np.float64) for b in biases]

    # ------------------------------------------------------------------
    # Construction

    @classmethod
    def initialise(
        cls, rng: Rng, layer_sizes: Sequence[int] = LAYER_SIZES
    ) -> "MlpModel":
        """A network with He-initialised weights and zero biases."""
        weights, biases = [], []
        for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
            weights.append(rng.normal((fan_in, fan_out)) * np.sqrt(2 / fan_in))
            biases.append(np.zeros(fan_out))
        return cls(weights, biases)

    @classmethod
    def zeros(cls, layer_sizes: Sequence[int] = LAYER_SIZES) -> "MlpModel":
        """A network whose weights and biases are all zero."""
        shapes = list(zip(layer_sizes[:-1], layer_sizes[1:]))
        return cls(
            [np.zeros(shape) for shape in shapes],
            [np.zeros(fan_out) for _, fan_out in shapes],
        )

    def copy(self) -> "MlpModel":
        """A deep copy of the network."""
        return MlpModel(
            [w.copy() for w in self.weights], [b.copy() for b in self.biases]
        )

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        """Input size followed by the output size of each layer."""
        return (self.weights[0].shape[0],) + tuple(
            w.shape[1] for w in self.weights
        )

    @property
    def num_classes(self) -> int:
        return self.weights[-1].shape[1]

    # ------------------------------------------------------------------
    # Forward and backward passes

    def forward(self, inputs: np.ndarray) -> np.ndarray:
        """Logits of a ``B × input_size`` batch."""
        return self.forward_with_cache(inputs)[0]

    def forward_with_cache(
        self, inputs: np.ndarray
    ) -> tuple[np.ndarray, ForwardCache]:
        """Logits of a batch, plus what the backward pass needs."""
        cache = ForwardCache(np.asarray(inputs, dtype=np.float64))
        hidden = cache.activations[0]
        last = len(self.weights) - 1
        for index, (weight, bias) in enumerate(zip(self.weights, self.biases)):
            pre_activation = hidden @ weight + bias
            cache.pre_activations.append(pre_activation)
            if index == last:
                return pre_activation, cache
            hidden = np.maximum(pre_activation, 0.0)
            cache.activations.append(hidden)
        raise AssertionError("unreachable")

    def backward(
        self, cache: ForwardCache, grad_logits: np.ndarray
    ) -> tuple[list[np.ndarray], list[np.ndarray]]:
        """Gradients of a loss with respect to every weight and bias.

        :param cache: The cache of the forward pass.
        :param grad_logits: Gradient of the loss with respect to the
            logits (``B × num_classes``).
        :return: The weight gradients and the bias gradients.
        """
        grad_weights: list[np.ndarray] = [None] * len(self.weights)
        grad_biases: list[np.ndarray] = [None] * len(self.biases)
        grad = grad_logits
        for index in range(len(self.weights) - 1, -1, -1):
            grad_weights[index] = cache.activations[index].T @ grad
            grad_biases[index] = grad.sum(axis=0)
            if index:
                grad = grad @ self.weights[index].T
                grad = grad * (cache.pre_activations[index - 1] > 0)
        return grad_weights, grad_biases

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        inputs = np.stack(
            [np.concatenate([x1.payload, x2.payload]) for x1, x2 in pairs]
        )
        if inputs.shape[1] != self.layer_sizes[0]:
            raise ValueError(
                f"The network reads {self.layer_sizes[0]} inputs, "
                f"but the pairs have {inputs.shape[1]}."
            )
        return self.forward(inputs)

    # ------------------------------------------------------------------
    # Persistence

    def save(self, path: str | Path, config: dict | None = None) -> None:
        """Write the network to a msgpack file.

        :param path: The model file.
        :param config: The run configuration, stored under ``config``.
        """
        content = {
            "config": config or {},
            "format": MODEL_FILE_FORMAT,
            "version": MODEL_FILE_VERSION,
            "layer_sizes": list(self.layer_sizes),
            "weights": self.weights,
            "biases": self.biases,
        }
        Path(path).write_bytes(
            msgpack.packb(content, default=msgpack_numpy.encode)
        )
        _logger.info("Model %s written to %s", self.layer_sizes, path)

    @classmethod
    def load(cls, path: str | Path) -> "MlpModel":
        """Read a network written by :meth:`save`.

        :raises FileNotFoundError: If the file doesn't exist.
        :raises ValueError: If the file is not a model file.
        """
        content = msgpack.unpackb(
            Path(path).read_bytes(),
            object_hook=msgpack_numpy.decode,
            raw=False,
        )
        if (
            not isinstance(content, dict)
            or content.get("format") != MODEL_FILE_FORMAT
        ):
            raise ValueError(f"{path} is not a model file.")
        model = cls(
            [np.array(w) for w in content["weights"]],
            [np.array(b) for b in content["biases"]],
        )
        _logger.info("Model %s read from %s", model.layer_sizes, path)
        return model


def mlp_forward(model: MlpModel, d1, d2) -> np.ndarray:
    """Logits of a single pair of vectors.

    :param model: The network.
    :param d1: The first modality vector.
    :param d2: The second modality vector.
    :return: The logit vector.
    """
    inputs = np.concatenate(
        [np.asarray(d1, dtype=np.float64), np.asarray(d2, dtype=np.float64)]
    )
    return model.forward(inputs[None, :])[0]
