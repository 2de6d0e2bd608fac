"""Models and reference computations for the dime tests."""

from typing import Sequence

import numpy as np

from disentangled_explainer.config.components_config import (
    SurrogateConfiguration,
)
from disentangled_explainer.disentangle import (
    SampleSet,
    build_logit_table,
    decompose_point,
)
from disentangled_explainer.models import BlackBoxModel, ModalityKind
from disentangled_explainer.models.modality_value import ModalityPair
from disentangled_explainer.numerics.rng import derive_seed
from disentangled_explainer.surrogate import (
    Explanation,
    ExplanationKind,
    fit_many,
    perturb,
    segment,
)


class ScoreModel(BlackBoxModel):
    """Logits ``(-s, s)`` with s the synthetic score of the pair.

    ``s = sum(x1) + sum(x2) + x1 . x2``: its unimodal parts are the two
    sums and its interaction is the dot product.
    """

    modality_kinds = (ModalityKind.DENSE, ModalityKind.DENSE)

    @property
    def num_classes(self) -> int:
        return 2

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        first = np.stack([x1.payload for x1, _ in pairs])
        second = np.stack([x2.payload for _, x2 in pairs])
        score = (
            first.sum(axis=1)
            + second.sum(axis=1)
            + np.einsum("ij,ij->i", first, second)
        )
        return np.stack([-score, score], axis=1)


def rebuilt_explanations(
    model: BlackBoxModel,
    samples: SampleSet,
    k: int,
    class_index: int,
    config: SurrogateConfiguration,
    seed: int,
) -> dict[str, Explanation]:
    """The six explanations of point k, rebuilding a table for every
    perturbation."""
    explanations = {}
    for side in (1, 2):
        value = samples.points[k][side - 1]
        batch = perturb(
            value,
            segment(value),
            config.lime_samples,
            derive_seed(seed, f"perturb:{samples.identifiers[k]}:{side}"),
            config.keep_probability,
            config.kernel_width,
        )
        targets = []
        for perturbed in batch.values:
            table = build_logit_table(
                model, samples.with_value(k, side, perturbed)
            )
            decomposed = decompose_point(table, k).for_class(class_index)
            targets.append([decomposed.full, decomposed.uc, decomposed.mi])
        lime, uc, mi = fit_many(
            batch,
            np.array(targets),
            [ExplanationKind.FULL, ExplanationKind.UC, ExplanationKind.MI],
            config.ridge_lambda,
            side,
            class_index,
        )
        explanations.update(
            {f"lime{side}": lime, f"uc{side}": uc, f"mi{side}": mi}
        )
    return explanations
