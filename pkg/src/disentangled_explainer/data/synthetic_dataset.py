"""The synthetic two-modality dataset and its ground-truth explanations.

Each point is a pair of 10-dimensional standard normal vectors
``(d1, d2)``. Its score is the sum of all the elements of both vectors
plus their dot product, and its label tells whether the score is
positive. Since the score is made of a part that depends on each vector
alone (the sums) and a part that needs both (the dot product), the
ground truth explanations are known exactly:

- unimodal contribution of modality 1: ``d1``;
- unimodal contribution of modality 2: ``d2``;
- multimodal interaction: the element-wise product ``d1 * d2``.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from disentangled_explainer.numerics.rng import Rng

VECTOR_SIZE = 10
"""Dimension of each modality vector."""

SCORE_MARGIN = 0.01
"""Candidates whose absolute score is below this margin are discarded."""

MIN_DATASET_SIZE = 10
"""The smallest dataset that can be split 8/1/1."""

_logger = logging.getLogger(__name__)


def score(d1, d2) -> float:
    """Sum of all the elements of both vectors plus their dot product.

    :param d1: A 10-vector.
    :param d2: A 10-vector.
    :return: ``sum(d1) + sum(d2) + d1 . d2``.
    """
    d1 = np.asarray(d1, dtype=np.float64)
    d2 = np.asarray(d2, dtype=np.float64)
    if d1.shape != (VECTOR_SIZE,) or d2.shape != (VECTOR_SIZE,):
        raise ValueError(f"Both vectors must have length {VECTOR_SIZE}.")
    return float(d1.sum() + d2.sum() + d1 @ d2)


@dataclass(frozen=True)
class SyntheticPoint:
    """A point of the synthetic dataset.

    Use :meth:`from_vectors` to build one: score and label are derived
    from the two vectors.
    """

    d1: np.ndarray
    d2: np.ndarray
    score: float
    label: int

    @classmethod
    def from_vectors(cls, d1, d2) -> "SyntheticPoint":
        """Build a point computing its score and label.

        :raises ValueError: If the score is within the discard margin.
        """
        d1 = np.array(d1, dtype=np.float64)
        d2 = np.array(d2, dtype=np.float64)
        point_score = score(d1, d2)
        if abs(point_score) < SCORE_MARGIN:
            raise ValueError(
                f"Score {point_score} is below the {SCORE_MARGIN} margin."
            )
        d1.setflags(write=False)
        d2.setflags(write=False)
        return cls(d1, d2, point_score, int(point_score > 0))


@dataclass
class DatasetSplits:
    """Train, validation and test splits of the synthetic dataset."""

    train: list[SyntheticPoint] = field(default_factory=list)
    valid: list[SyntheticPoint] = field(default_factory=list)
    test: list[SyntheticPoint] = field(default_factory=list)

    SPLIT_NAMES = ("train", "valid", "test")

    def get_split(self, name: str) -> list[SyntheticPoint]:
        """Get a split by name (``train``, ``valid`` or ``test``)."""
        if name not in self.SPLIT_NAMES:
            raise ValueError(
                f"Unknown split '{name}'. Known splits: {self.SPLIT_NAMES}"
            )
        return getattr(self, name)

    def __len__(self) -> int:
        return len(self.train) + len(self.valid) + len(self.test)


def as_arrays(
    points: list[SyntheticPoint],
) -> tuple[np.ndarray, np.ndarray]:
    """Stack points into model inputs and labels.

    :return: An M × 20 input matrix (``d1`` followed by ``d2``) and
        an M-vector of integer labels.
    """
    if not points:
        return np.zeros((0, 2 * VECTOR_SIZE)), np.zeros(0, dtype=np.int64)
    inputs = np.stack([np.concatenate([p.d1, p.d2]) for p in points])
    labels = np.array([p.label for p in points], dtype=np.int64)
    return inputs, labels


def generate(seed: int, n: int) -> DatasetSplits:
    """Generate ``n`` points and split them 8/1/1 in generation order.

    Candidates are drawn in blocks from a standard normal stream; the
    ones whose absolute score is below :data:`SCORE_MARGIN` are
    discarded, the others are kept in the order they were drawn.

    :param seed: The generation seed.
    :param n: The number of points to keep (at least 10).
    :return: The splits, sized ``floor(0.8 n)``, ``floor(0.1 n)`` and
        the rest.
    """
    if n < MIN_DATASET_SIZE:
        raise ValueError(
            f"The dataset needs at least {MIN_DATASET_SIZE} points "
            f"(got {n})."
        )

    rng = Rng(seed)
    points: list[SyntheticPoint] = []
    discarded = 0
    while len(points) < n:
        block = rng.normal((n, 2, VECTOR_SIZE))
        for d1, d2 in zip(block[:, 0, :], block[:, 1, :]):
            try:
                points.append(SyntheticPoint.from_vectors(d1, d2))
            except ValueError:
                discarded += 1
                continue
            if len(points) == n:
                break

    _logger.info(
        "Generated %d synthetic points (seed=%d, discarded=%d).",
        n,
        seed,
        discarded,
    )

    n_train = int(np.floor(0.8 * n))
    n_valid = int(np.floor(0.1 * n))
    return DatasetSplits(
        train=points[:n_train],
        valid=points[n_train : n_train + n_valid],
        test=points[n_train + n_valid :],
    )


def ground_truth(
    point: SyntheticPoint,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The ground-truth explanations of a point.

    :return: ``(uc1, uc2, mi)``, respectively ``d1``, ``d2`` and the
        element-wise product ``d1 * d2``.
    """
    return point.d1.copy(), point.d2.copy(), point.d1 * point.d2
