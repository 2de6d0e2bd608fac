"""Disentangled explanations of a model around the points of a sample
set."""

import logging

import numpy as np

from disentangled_explainer.config.components_config import (
    SurrogateConfiguration,
)
from disentangled_explainer.disentangle.decomposition import (
    decompose_perturbed_batch,
    decompose_point,
)
from disentangled_explainer.disentangle.logit_table import (
    LogitTable,
    build_logit_table,
)
from disentangled_explainer.disentangle.sample_set import SampleSet
from disentangled_explainer.dime.dime_report import DimeReport
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.models.modality_value import ModalityKind
from disentangled_explainer.numerics.rng import derive_seed
from disentangled_explainer.surrogate.explanation import ExplanationKind
from disentangled_explainer.surrogate.feature_space import segment
from disentangled_explainer.surrogate.perturbation import perturb
from disentangled_explainer.surrogate.surrogate_fitter import fit_many

_FITTED_KINDS = (ExplanationKind.FULL, ExplanationKind.UC, ExplanationKind.MI)


class DimeExplainer:
    """Explain a model on the points of a fixed sample set.

    The logit table of the sample set is built the first time it is
    needed (N² evaluations) and then reused: each explanation costs
    2·S·N more evaluations, S·N per modality.

    The perturbations of modality ``side`` of a point are seeded with
    ``derive_seed(seed, "perturb:<identifier>:<side>")``, so a point gets
    the same masks whatever sample set it belongs to.
    """

    def __init__(
        self,
        model: BlackBoxModel,
        samples: SampleSet,
        config: SurrogateConfiguration | None = None,
        seed: int = 0,
        table: LogitTable | None = None,
        workers: int = 1,
    ) -> None:
        """Initialise the explainer.

        :param model: The model under explanation.
        :param samples: The sample set.
        :param config: The surrogate settings (defaults if None).
        :param seed: The root seed of the perturbations.
        :param table: An already built table of ``samples`` (optional).
        :param workers: Rows evaluated concurrently when building the
            table.
        """
        if table is not None and table.identifiers != samples.identifiers:
            raise ValueError("The table was built on another sample set.")
        self.model = model
        self.samples = samples
        self.config = config or SurrogateConfiguration()
        self.seed = seed
        self.workers = workers
        self._table = table
        self._logger = logging.getLogger(__name__)

    @property
    def table(self) -> LogitTable:
        """The logit table of the sample set (built on first use)."""
        if self._table is None:
            self._logger.info(
                "Building the logit table of %d samples.", self.samples.n
            )
            self._table = build_logit_table(
                self.model, self.samples, self.workers
            )
        return self._table

    @property
    def is_warm(self) -> bool:
        """True when the logit table is already built."""
        return self._table is not None

    def perturbation_seed(self, k: int, side: int) -> int:
        """The seed of the perturbations of modality ``side`` of point k."""
        return derive_seed(
            self.seed, f"perturb:{self.samples.identifiers[k]}:{side}"
        )

    def explain(self, k: int, class_index: int | None = None) -> DimeReport:
        """The six explanations of point k of the sample set.

        :param k: The point position in the sample set.
        :param class_index: The explained class (default: the predicted
            one).
        :raises GatewayError: If the model fails.
        :raises EmptyInputError: If a modality has no feature.
        """
        table = self.table
        decomposed = decompose_point(table, k)
        predicted = table.predicted_class(k)
        if class_index is None:
            class_index = predicted
        if not 0 <= class_index < table.num_classes:
            raise ValueError(
                f"Class {class_index} does not exist "
                f"(the model has {table.num_classes})."
            )

        provenance = {
            "seed": self.seed,
            "n_samples": self.samples.n,
            "point": self.samples.identifiers[k],
        }
        fitted = {}
        labels = []
        for side in (1, 2):
            value = self.samples.points[k][side - 1]
            if value.kind is ModalityKind.GRID:
                features = segment(
                    value, self.config.grid_rows, self.config.grid_cols
                )
            else:
                features = segment(value)
            labels.append(features.descriptors)

            batch = perturb(
                value,
                features,
                self.config.lime_samples,
                self.perturbation_seed(k, side),
                self.config.keep_probability,
                self.config.kernel_width,
            )
            perturbed = decompose_perturbed_batch(
                table, self.samples, k, side, batch.values, self.model
            ).for_class(class_index)
            targets = np.stack(
                [perturbed.full, perturbed.uc, perturbed.mi], axis=1
            )
            full, uc, mi = fit_many(
                batch,
                targets,
                _FITTED_KINDS,
                self.config.ridge_lambda,
                side,
                class_index,
                provenance,
            )
            fitted[side] = (full, uc, mi)

        report = DimeReport(
            point_index=k,
            identifier=self.samples.identifiers[k],
            class_index=class_index,
            predicted_class=predicted,
            logits=decomposed,
            lime1=fitted[1][0],
            uc1=fitted[1][1],
            mi1=fitted[1][2],
            lime2=fitted[2][0],
            uc2=fitted[2][1],
            mi2=fitted[2][2],
            feature_labels=(labels[0], labels[1]),
            provenance=provenance,
        )
        if report.low_fit:
            self._logger.warning(
                "Point %s: the plain surrogates fit poorly (R² %.3f, %.3f).",
                report.identifier,
                report.lime1.r2,
                report.lime2.r2,
            )
        return report

    def explain_all(
        self,
        indices: list[int] | None = None,
        class_index: int | None = None,
    ) -> list[DimeReport]:
        """Explain several points of the sample set on the same table.

        :param indices: The positions to explain (default: all).
        :param class_index: The explained class (default: the predicted
            class of each point).
        """
        if indices is None:
            indices = list(range(self.samples.n))
        return [self.explain(k, class_index) for k in indices]


def dime_explain(
    model: BlackBoxModel,
    samples: SampleSet,
    k: int,
    class_index: int | None = None,
    config: SurrogateConfiguration | None = None,
    seed: int = 0,
) -> DimeReport:
    """Explain point k of a sample set (building its logit table)."""
    return DimeExplainer(model, samples, config, seed).explain(k, class_index)
