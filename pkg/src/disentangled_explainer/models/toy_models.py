"""Small in-process models with a known structure.

They are the oracles of the disentanglement: an additive model has no
multimodal interaction at all, a product model is (on symmetric samples)
a pure interaction, a constant model has neither.
"""

from typing import Callable, Sequence

import numpy as np

from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.models.modality_value import (
    ModalityKind,
    ModalityPair,
    ModalityValue,
)
from disentangled_explainer.numerics.rng import Rng


def _stack_dense(
    pairs: Sequence[ModalityPair],
) -> tuple[np.ndarray, np.ndarray]:
    first = np.stack([x1.payload for x1, _ in pairs])
    second = np.stack([x2.payload for _, x2 in pairs])
    return first, second


class FunctionModel(BlackBoxModel):
    """A model defined by a Python function on a single pair."""

    def __init__(
        self,
        function: Callable[[ModalityValue, ModalityValue], Sequence[float]],
        num_classes: int,
    ) -> None:
        """Initialise the model.

        :param function: Maps ``(x1, x2)`` to ``num_classes`` logits.
        :param num_classes: The number of logits.
        """
        self.function = function
        self._num_classes = num_classes

    @property
    def num_classes(self) -> int:
        return self._num_classes

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        return np.array([self.function(x1, x2) for x1, x2 in pairs])


class RandomReluNetwork:
    """A small random one-hidden-layer rectifier network.

    It is a callable mapping a ``B × input_size`` matrix to a
    ``B × output_size`` matrix, used as a per-modality component of
    random additive models.
    """

    def __init__(
        self, rng: Rng, input_size: int, hidden_size: int, output_size: int
    ) -> None:
        self.hidden_weights = rng.normal((input_size, hidden_size))
        self.hidden_biases = rng.normal(hidden_size)
        self.output_weights = rng.normal((hidden_size, output_size))
        self.output_biases = rng.normal(output_size)

    def __call__(self, inputs: np.ndarray) -> np.ndarray:
        hidden = inputs @ self.hidden_weights + self.hidden_biases
        hidden = np.maximum(hidden, 0.0)
        return hidden @ self.output_weights + self.output_biases


class AdditiveModel(BlackBoxModel):
    """``M(x1, x2) = f(x1) + g(x2)`` on dense inputs.

    By construction it has no multimodal interaction.
    """

    modality_kinds = (ModalityKind.DENSE, ModalityKind.DENSE)

    def __init__(
        self,
        first: Callable[[np.ndarray], np.ndarray],
        second: Callable[[np.ndarray], np.ndarray],
        num_classes: int,
    ) -> None:
        """Initialise the model.

        :param first: Maps a ``B × d1`` matrix to ``B × C`` logits.
        :param second: Maps a ``B × d2`` matrix to ``B × C`` logits.
        :param num_classes: C.
        """
        self.first = first
        self.second = second
        self._num_classes = num_classes

    @classmethod
    def random(
        cls,
        rng: Rng,
        input_sizes: tuple[int, int],
        num_classes: int,
        hidden_size: int = 8,
    ) -> "AdditiveModel":
        """An additive model made of two random small networks."""
        return cls(
            RandomReluNetwork(rng, input_sizes[0], hidden_size, num_classes),
            RandomReluNetwork(rng, input_sizes[1], hidden_size, num_classes),
            num_classes,
        )

    @property
    def num_classes(self) -> int:
        return self._num_classes

    def unimodal_parts(
        self, x1: ModalityValue, x2: ModalityValue
    ) -> tuple[np.ndarray, np.ndarray]:
        """The two terms ``f(x1)`` and ``g(x2)`` of a pair."""
        return (
            self.first(x1.payload[None, :])[0],
            self.second(x2.payload[None, :])[0],
        )

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        first, second = _stack_dense(pairs)
        return self.first(first) + self.second(second)


class ProductModel(BlackBoxModel):
    """The dot product of two dense vectors as a single logit.

    With ``num_classes=2`` the logits are ``(-x1.x2, x1.x2)``.
    """

    modality_kinds = (ModalityKind.DENSE, ModalityKind.DENSE)

    def __init__(self, num_classes: int = 1) -> None:
        if num_classes not in (1, 2):
            raise ValueError("A product model has 1 or 2 classes.")
        self._num_classes = num_classes

    @property
    def num_classes(self) -> int:
        return self._num_classes

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        first, second = _stack_dense(pairs)
        products = np.sum(first * second, axis=1)
        if self._num_classes == 1:
            return products[:, None]
        return np.stack([-products, products], axis=1)


class ConstantModel(BlackBoxModel):
    """A model that ignores its inputs."""

    def __init__(self, logits: Sequence[float]) -> None:
        self.logits = np.array(logits, dtype=np.float64)

    @property
    def num_classes(self) -> int:
        return self.logits.size

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        return np.tile(self.logits, (len(pairs), 1))
