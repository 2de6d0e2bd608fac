"""The uniform black-box model abstraction.

A model under explanation is anything that maps a pair of modality
values ``(x1, x2)`` to a vector of ``C`` pre-softmax logits. Models are
always accessed in batches, through :meth:`BlackBoxModel.evaluate_batch`,
which validates what the concrete implementation returns.
"""

import abc
import logging
import threading
from typing import Sequence

import numpy as np

from disentangled_explainer.models.modality_value import (
    ModalityKind,
    ModalityPair,
)


class GatewayError(Exception):
    """A model could not evaluate a batch.

    It carries the index of the failing batch (the request index when
    the pairs are sent in several chunks, 0 otherwise), or None when the
    failure is not related to a specific batch (e.g., the handshake).
    """

    def __init__(self, message: str, batch_index: int | None = None):
        self.batch_index = batch_index
        if batch_index is not None:
            message = f"{message} (batch index {batch_index})"
        super().__init__(message)


class BlackBoxModel(abc.ABC):
    """A model mapping two modality values to a vector of logits.

    Subclass it implementing :attr:`num_classes` and
    :meth:`_evaluate_batch`. Optionally, set :attr:`modality_kinds` to
    let the gateway reject incompatible inputs before calling the model.

    In-process models are expected to be read-only after construction,
    so they can be shared across threads.
    """

    modality_kinds: tuple[ModalityKind, ModalityKind] | None = None
    """The kinds of the two modalities the model accepts (None: any)."""

    @property
    @abc.abstractmethod
    def num_classes(self) -> int:
        """Number of logits the model returns for each pair."""

    @abc.abstractmethod
    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        """Evaluate the model on a batch of pairs.

        :param pairs: The (already validated) pairs.
        :return: A ``len(pairs) × num_classes`` array of logits.
        """

    def evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        """Evaluate the model on a batch of pairs.

        Element ``i`` of the result is the logit vector of ``pairs[i]``.

        :param pairs: The pairs to evaluate.
        :return: A ``len(pairs) × num_classes`` float array.
        :raises ValueError: If a pair has the wrong modality kinds.
        :raises GatewayError: If the model fails or returns malformed or
            non-finite logits.
        """
        if self.modality_kinds is not None:
            for index, (x1, x2) in enumerate(pairs):
                if (x1.kind, x2.kind) != self.modality_kinds:
                    raise ValueError(
                        f"Pair {index} has kinds ({x1.kind.value}, "
                        f"{x2.kind.value}), but the model accepts "
                        f"({self.modality_kinds[0].value}, "
                        f"{self.modality_kinds[1].value})."
                    )

        if len(pairs) == 0:
            return np.zeros((0, self.num_classes))

        logits = np.asarray(self._evaluate_batch(pairs), dtype=np.float64)
        if logits.shape != (len(pairs), self.num_classes):
            raise GatewayError(
                f"{self.__class__.__name__} returned logits of shape "
                f"{logits.shape}, expected {(len(pairs), self.num_classes)}.",
                batch_index=0,
            )
        if not np.all(np.isfinite(logits)):
            raise GatewayError(
                f"{self.__class__.__name__} returned non-finite logits.",
                batch_index=0,
            )
        return logits

    def evaluate(self, x1, x2) -> np.ndarray:
        """Evaluate the model on a single pair.

        :return: The C-vector of logits.
        """
        return self.evaluate_batch([(x1, x2)])[0]


class CountingModel(BlackBoxModel):
    """A transparent wrapper that counts the evaluations of a model.

    Every pair passed to :meth:`evaluate_batch` counts as one model
    evaluation. Use it to measure (and assert) the cost of explanations.
    """

    def __init__(self, model: BlackBoxModel) -> None:
        self.model = model
        """The wrapped model."""

        self.evaluations = 0
        """Number of pairs evaluated so far."""

        self.calls = 0
        """Number of batches evaluated so far."""

        self.modality_kinds = model.modality_kinds

        self._logger = logging.getLogger(__name__)
        self._counter_lock = threading.Lock()

    @property
    def num_classes(self) -> int:
        return self.model.num_classes

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        with self._counter_lock:
            self.calls += 1
            self.evaluations += len(pairs)
        return self.model.evaluate_batch(pairs)

    def reset(self) -> None:
        """Set the counters back to zero."""
        self._logger.debug(
            "Resetting counters (evaluations=%d, calls=%d)",
            self.evaluations,
            self.calls,
        )
        with self._counter_lock:
            self.evaluations = 0
            self.calls = 0
