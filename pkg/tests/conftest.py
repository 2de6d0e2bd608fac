"""Pytest configuration file."""

from pytest import fixture

from disentangled_explainer.data.synthetic_dataset import (
    DatasetSplits,
    generate,
)


@fixture(scope="session")
def small_splits() -> DatasetSplits:
    """A 200-point synthetic dataset (160/20/20)."""
    return generate(seed=1, n=200)
