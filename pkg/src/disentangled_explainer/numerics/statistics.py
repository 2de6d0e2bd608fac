"""Statistics used to evaluate and compare explanations.

- :func:`pearson` and :func:`cosine_distance` compare two explanation
  weight vectors (or an explanation with its ground truth);
- :func:`topk_mean_abs` summarises how strong an explanation is;
- :func:`krippendorff_alpha_nominal` measures the agreement between
  categorical judgements (e.g., the dominance category assigned to the
  same points under different seeds).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import distance
from scipy.stats import pearsonr


class NumericsError(ValueError):
    """A numerical operation is undefined for the given inputs."""


class UndefinedCorrelationError(NumericsError):
    """The correlation is undefined because an input is constant.

    When it happens on explanation weights, it usually means the
    explanation is degenerate (e.g., all the weights are zero).
    """


class DegenerateVectorError(NumericsError):
    """A vector has no direction (it is the zero vector)."""


class InsufficientDataError(NumericsError):
    """There are not enough data to compute the statistic."""


def _as_pair_of_vectors(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise ValueError(
            f"Vectors must have the same length (got {a.size} and {b.size})."
        )
    return a, b


def pearson(a, b) -> float:
    """Pearson correlation between two vectors.

    :param a: A real vector with at least 2 entries.
    :param b: A real vector with the same length of ``a``.
    :return: The correlation, in [-1, 1].
    :raises ValueError: If the lengths differ or are below 2.
    :raises UndefinedCorrelationError: If one of the vectors is constant.
    """
    a, b = _as_pair_of_vectors(a, b)
    if a.size < 2:
        raise ValueError("Pearson correlation needs at least 2 values.")
    if np.ptp(a) == 0.0 or np.ptp(b) == 0.0:
        raise UndefinedCorrelationError(
            "Pearson correlation is undefined for a constant vector."
        )
    return float(np.clip(pearsonr(a, b)[0], -1.0, 1.0))


def cosine_distance(a, b) -> float:
    """One minus the cosine similarity of two vectors.

    :param a: A nonzero real vector.
    :param b: A nonzero real vector with the same length of ``a``.
    :return: The distance, in [0, 2].
    :raises DegenerateVectorError: If one of the vectors is zero.
    """
    a, b = _as_pair_of_vectors(a, b)
    if not np.any(a) or not np.any(b):
        raise DegenerateVectorError(
            "Cosine distance is undefined for a zero vector."
        )
    return float(np.clip(distance.cosine(a, b), 0.0, 2.0))


def topk_mean_abs(weights, k: int) -> float:
    """Mean of the ``k`` largest absolute entries of a vector.

    :param weights: A real vector.
    :param k: A positive integer, at most the vector length.
    :return: The mean of the top-k absolute values.
    """
    magnitudes = np.abs(np.asarray(weights, dtype=np.float64).ravel())
    if not 1 <= k <= magnitudes.size:
        raise ValueError(
            f"k must be in [1, {magnitudes.size}] (got {k})."
        )
    return float(np.mean(np.sort(magnitudes)[::-1][:k]))


@dataclass(frozen=True)
class RatingsMatrix:
    """Categorical ratings given by a set of annotators to a set of items.

    ``values[a][i]`` is the category annotator ``a`` gave to item ``i``;
    it is meaningful only where ``missing[a][i]`` is False.
    """

    values: np.ndarray
    """Annotator × item integer categories."""

    missing: np.ndarray = field(default=None)
    """Annotator × item booleans, True where the rating is missing."""

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.int64)
        if values.ndim != 2:
            raise ValueError("Ratings must be an annotator × item matrix.")
        missing = (
            np.zeros(values.shape, dtype=bool)
            if self.missing is None
            else np.asarray(self.missing, dtype=bool)
        )
        if missing.shape != values.shape:
            raise ValueError("The missing-marker matrix has a wrong shape.")
        if values.shape[0] < 2:
            raise ValueError("Ratings need at least 2 annotators.")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)

    @classmethod
    def from_rows(cls, rows: list[list[int | None]]) -> "RatingsMatrix":
        """Build a matrix from per-annotator lists (None marks missing)."""
        missing = [[value is None for value in row] for row in rows]
        values = [
            [0 if value is None else value for value in row] for row in rows
        ]
        return cls(np.array(values), np.array(missing))

    @property
    def n_annotators(self) -> int:
        """Number of annotators (rows)."""
        return self.values.shape[0]

    @property
    def n_items(self) -> int:
        """Number of items (columns)."""
        return self.values.shape[1]


def krippendorff_alpha_nominal(ratings: RatingsMatrix) -> float:
    """Krippendorff's alpha for nominal categories.

    It is computed from the coincidence matrix of the pairable values
    (items rated by at least 2 annotators). When only one category occurs
    among the pairable values there can be no disagreement and the
    result is 1.

    :param ratings: The ratings to evaluate.
    :return: Alpha, at most 1 (1 means perfect agreement).
    :raises InsufficientDataError: If no item has at least 2 ratings.
    """
    categories = np.unique(ratings.values[~ratings.missing])
    index_of = {category: idx for idx, category in enumerate(categories)}
    coincidences = np.zeros((categories.size, categories.size))

    for item in range(ratings.n_items):
        present = ~ratings.missing[:, item]
        n_ratings = int(present.sum())
        if n_ratings < 2:
            continue
        counts = np.zeros(categories.size)
        for value in ratings.values[present, item]:
            counts[index_of[value]] += 1
        coincidences += (np.outer(counts, counts) - np.diag(counts)) / (
            n_ratings - 1
        )

    n_pairable = coincidences.sum()
    if n_pairable == 0:
        raise InsufficientDataError(
            "Krippendorff's alpha needs at least one item "
            "with 2 or more ratings."
        )

    marginals = coincidences.sum(axis=1)
    off_diagonal = ~np.eye(categories.size, dtype=bool)
    observed = coincidences[off_diagonal].sum()
    expected = np.outer(marginals, marginals)[off_diagonal].sum()
    if expected == 0:
        return 1.0
    return float(1.0 - (n_pairable - 1) * observed / expected)
