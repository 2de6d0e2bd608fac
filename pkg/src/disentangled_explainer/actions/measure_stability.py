"""Measure how much the dominance categories depend on the seed."""

from disentangled_explainer.actions.acceptance_check import AcceptanceCheck
from disentangled_explainer.actions.pipeline_action import PipelineAction
from disentangled_explainer.actions.utils.artifacts import (
    write_json_artifact,
    write_text_artifact,
)
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.dataset_io import read_splits
from disentangled_explainer.dime.report_rendering import render_stability
from disentangled_explainer.dime.validation import (
    StabilityReport,
    explanation_stability,
)
from disentangled_explainer.disentangle.sample_set import (
    draw_sample_indices,
    synthetic_sample_set,
)
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.numerics.rng import Rng, derive_seed

STABILITY_FILENAME = "stability"


class MeasureStability(PipelineAction[StabilityReport]):
    """Categorise the members of a sample set under several seeds.

    Every member of a sample set of N test points is explained under
    ``stability_seeds`` seeds and categorised by its dominant
    contribution; the agreement across seeds is reported as
    Krippendorff's alpha. There is no pass threshold.

    Writes ``stability.json`` and ``stability.txt``.
    """

    def __init__(
        self,
        config: RunConfiguration,
        model: BlackBoxModel,
        class_index: int | None = None,
    ) -> None:
        super().__init__()
        self.config = config
        self.model = model
        self.class_index = class_index

    def _action(self) -> StabilityReport:
        test = read_splits(self.config.data_dir).test
        members = draw_sample_indices(
            len(test),
            [],
            self.config.disentangle.n_samples,
            Rng(derive_seed(self.config.seed, "stability-samples")),
        )
        samples = synthetic_sample_set(test, members)

        report = explanation_stability(
            self.model,
            samples,
            list(range(samples.n)),
            self.config.validation.stability_seeds,
            class_index=self.class_index,
            config=self.config.surrogate,
            seed=self.config.seed,
            k=self.config.validation.top_k,
        )
        write_json_artifact(
            self.config.out,
            f"{STABILITY_FILENAME}.json",
            {"stability": report.to_dict()},
            self.config,
        )
        write_text_artifact(
            self.config.out,
            f"{STABILITY_FILENAME}.txt",
            render_stability(report),
        )
        return report

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        return []
