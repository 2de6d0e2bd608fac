"""The fixed set of points the expectations are estimated on."""

from dataclasses import dataclass
from typing import Sequence

from disentangled_explainer.data.synthetic_dataset import SyntheticPoint
from disentangled_explainer.models.modality_value import (
    ModalityPair,
    ModalityValue,
)
from disentangled_explainer.numerics.rng import Rng

MIN_SAMPLES = 2


def synthetic_pair(point: SyntheticPoint) -> ModalityPair:
    """The two dense modality values of a synthetic point."""
    return ModalityValue.dense(point.d1), ModalityValue.dense(point.d2)


@dataclass(frozen=True)
class SampleSet:
    """N points ``(x1_i, x2_i)`` over which the expectations are taken.

    Each point has an identifier (e.g., ``test:42``), which is stored
    with persisted logit tables. All the first values have the same
    kind, and so do all the second values.
    """

    points: tuple[ModalityPair, ...]
    identifiers: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.points) < MIN_SAMPLES:
            raise ValueError(
                f"A sample set needs at least {MIN_SAMPLES} points "
                f"(got {len(self.points)})."
            )
        if len(self.identifiers) != len(self.points):
            raise ValueError("There must be one identifier per point.")
        if len(set(self.identifiers)) != len(self.identifiers):
            raise ValueError("Sample identifiers must be unique.")
        for side in (0, 1):
            kinds = {pair[side].kind for pair in self.points}
            if len(kinds) != 1:
                raise ValueError(
                    f"Modality {side + 1} mixes kinds "
                    f"{sorted(k.value for k in kinds)}."
                )

    @classmethod
    def from_pairs(
        cls,
        pairs: Sequence[ModalityPair],
        identifiers: Sequence[str] | None = None,
    ) -> "SampleSet":
        """Build a sample set (identifiers default to the positions)."""
        if identifiers is None:
            identifiers = [str(index) for index in range(len(pairs))]
        return cls(tuple(pairs), tuple(identifiers))

    @property
    def n(self) -> int:
        """The number of points N."""
        return len(self.points)

    def values(self, side: int) -> list[ModalityValue]:
        """The values of modality ``side`` (1 or 2) of every point."""
        _check_side(side)
        return [pair[side - 1] for pair in self.points]

    def with_value(
        self, k: int, side: int, value: ModalityValue
    ) -> "SampleSet":
        """A copy where the modality ``side`` value of point k is
        replaced."""
        _check_side(side)
        pair = list(self.points[k])
        pair[side - 1] = value
        points = list(self.points)
        points[k] = tuple(pair)
        return SampleSet(tuple(points), self.identifiers)


def _check_side(side: int) -> None:
    if side not in (1, 2):
        raise ValueError(f"The modality side must be 1 or 2 (got {side}).")


def synthetic_sample_set(
    points: Sequence[SyntheticPoint],
    indices: Sequence[int],
    split_name: str = "test",
) -> SampleSet:
    """A sample set made of some points of a synthetic split.

    :param points: The split.
    :param indices: The positions of the chosen points in the split.
    :param split_name: Used to build the identifiers (``test:42``).
    """
    return SampleSet(
        tuple(synthetic_pair(points[i]) for i in indices),
        tuple(f"{split_name}:{int(i)}" for i in indices),
    )


def draw_sample_indices(
    pool_size: int,
    members: Sequence[int],
    n_samples: int,
    rng: Rng,
) -> list[int]:
    """Complete a list of required members with uniform random picks.

    The required members come first, in the given order; the other
    indices are drawn without replacement among the remaining pool.

    :param pool_size: Size of the pool the indices refer to.
    :param members: Indices that must belong to the sample set (e.g.,
        the point under explanation).
    :param n_samples: The size N of the sample set.
    :param rng: The stream of the draw.
    :raises ValueError: If the pool is too small.
    """
    members = [int(m) for m in members]
    if n_samples < MIN_SAMPLES:
        raise ValueError(f"N must be at least {MIN_SAMPLES}.")
    if len(set(members)) != len(members) or len(members) > n_samples:
        raise ValueError("Members must be distinct and at most N.")
    if any(not 0 <= m < pool_size for m in members):
        raise ValueError("A member is outside the pool.")
    if n_samples > pool_size:
        raise ValueError(
            f"Can't draw {n_samples} samples from {pool_size} points."
        )

    taken = set(members)
    others = [i for i in range(pool_size) if i not in taken]
    picks = rng.choice(len(others), n_samples - len(members))
    return members + [others[p] for p in picks]


def select_sample_set(
    points: Sequence[SyntheticPoint],
    explained_index: int,
    n_samples: int,
    rng: Rng,
    split_name: str = "test",
) -> SampleSet:
    """Draw a sample set around a point of a synthetic split.

    The explained point is the first member (k = 0); the other N - 1
    members are drawn uniformly without replacement from the split.
    """
    indices = draw_sample_indices(
        len(points), [explained_index], n_samples, rng
    )
    return synthetic_sample_set(points, indices, split_name)
