"""Seeded random number generation shared by all the components.

All the randomness of a run (dataset generation, weight initialisation,
sample-set selection, perturbation masks) flows through :class:`Rng`
instances. Each component receives its own instance, seeded from the
root seed of the run and a role tag through :func:`derive_seed`, so
partial reruns reproduce exactly the same streams.
"""

import hashlib

import numpy as np

MAX_SEED = 2**64 - 1
"""Seeds are 64-bit unsigned integers."""


def derive_seed(root_seed: int, tag: str) -> int:
    """Derive the seed of a subcomponent from the root seed and a tag.

    :param root_seed: The root seed of the run.
    :param tag: A string naming the role of the subcomponent
        (e.g., ``"mlp-init"``, ``"perturb:3:1"``).
    :return: A 64-bit unsigned seed.
    """
    digest = hashlib.sha256(f"{root_seed}:{tag}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


class Rng:
    """A single-owner, seeded random stream.

    The stream is a PCG64 bit generator, whose output (and the normal
    draws numpy derives from it) is identical across platforms for a
    given seed. The instance also counts how many values it has produced
    so far (``stream_position``), which helps to spot diverging reruns.

    Instances are not thread-safe: when you need randomness in parallel
    workers, give each worker its own instance (see :meth:`spawn`).
    """

    def __init__(self, seed: int) -> None:
        """Initialise the stream.

        :param seed: A 64-bit unsigned integer.
        :raises ValueError: If the seed is out of range.
        """
        if not 0 <= int(seed) <= MAX_SEED:
            raise ValueError(
                f"Seed {seed} is not a 64-bit unsigned integer."
            )

        self.seed = int(seed)
        """The seed the stream was created with."""

        self.stream_position = 0
        """How many values have been drawn from the stream so far."""

        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    def _advance(self, size: int | tuple[int, ...] | None) -> None:
        self.stream_position += int(np.prod(size)) if size is not None else 1

    def spawn(self, tag: str) -> "Rng":
        """Create an independent stream for a subcomponent.

        :param tag: The role tag of the subcomponent.
        :return: A new stream seeded with ``derive_seed(seed, tag)``.
        """
        return Rng(derive_seed(self.seed, tag))

    def normal(
        self, size: int | tuple[int, ...] | None = None
    ) -> np.ndarray | float:
        """Draw standard normal values.

        :param size: The output shape (a scalar if None).
        """
        self._advance(size)
        return self._generator.standard_normal(size)

    def uniform(
        self, size: int | tuple[int, ...] | None = None
    ) -> np.ndarray | float:
        """Draw values uniformly from [0, 1).

        :param size: The output shape (a scalar if None).
        """
        self._advance(size)
        return self._generator.random(size)

    def bernoulli(
        self, probability: float, size: int | tuple[int, ...]
    ) -> np.ndarray:
        """Draw binary values that are 1 with the given probability.

        :param probability: The probability of drawing a 1.
        :param size: The output shape.
        :return: An integer array of zeros and ones.
        """
        return (self.uniform(size) < probability).astype(np.int8)

    def permutation(self, n: int) -> np.ndarray:
        """Return a random permutation of ``range(n)``."""
        self._advance(n)
        return self._generator.permutation(n)

    def choice(self, n: int, k: int) -> np.ndarray:
        """Pick ``k`` distinct indices from ``range(n)``.

        :param n: The population size.
        :param k: The number of indices to pick (at most ``n``).
        :return: The picked indices, in drawing order.
        """
        self._advance(k)
        return self._generator.choice(n, size=k, replace=False)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, stream_position={self.stream_position})"
