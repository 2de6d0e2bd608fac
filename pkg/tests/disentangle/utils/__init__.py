"""Sample sets and reference computations for the disentangle tests."""

import numpy as np

from disentangled_explainer.disentangle import (
    DecomposedLogits,
    SampleSet,
    build_logit_table,
    decompose_point,
)
from disentangled_explainer.models import (
    BlackBoxModel,
    FunctionModel,
    ModalityValue,
)


def random_dense_samples(
    seed: int, n: int, sizes: tuple[int, int] = (3, 3)
) -> SampleSet:
    """N random pairs of dense vectors."""
    rng = np.random.default_rng(seed)
    return SampleSet.from_pairs(
        [
            (
                ModalityValue.dense(rng.normal(size=sizes[0])),
                ModalityValue.dense(rng.normal(size=sizes[1])),
            )
            for _ in range(n)
        ]
    )


def sign_samples() -> SampleSet:
    """The two points (1, 1) and (-1, -1) of scalar modalities."""
    return SampleSet.from_pairs(
        [
            (ModalityValue.dense([1.0]), ModalityValue.dense([1.0])),
            (ModalityValue.dense([-1.0]), ModalityValue.dense([-1.0])),
        ]
    )


def interaction_model() -> FunctionModel:
    """A two-class model with unimodal and interaction terms.

    It evaluates pairs one at a time, so its logits don't depend on
    the batch they belong to.
    """

    def logits(x1: ModalityValue, x2: ModalityValue) -> list[float]:
        a, b = x1.payload, x2.payload
        return [
            float(np.tanh(a).sum() - b[0] * a[1]),
            float(a[0] * b[1] * b[2] + np.sin(b).sum()),
        ]

    return FunctionModel(logits, 2)


def rebuilt_perturbed_decomposition(
    model: BlackBoxModel,
    samples: SampleSet,
    k: int,
    side: int,
    value: ModalityValue,
) -> DecomposedLogits:
    """Decompose a perturbed point by rebuilding the whole table."""
    table = build_logit_table(model, samples.with_value(k, side, value))
    return decompose_point(table, k)
