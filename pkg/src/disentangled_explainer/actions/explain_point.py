"""Explain one point of the synthetic dataset."""

from disentangled_explainer.actions.acceptance_check import AcceptanceCheck
from disentangled_explainer.actions.pipeline_action import PipelineAction
from disentangled_explainer.actions.utils.artifacts import (
    write_json_artifact,
    write_text_artifact,
)
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.dataset_io import read_splits
from disentangled_explainer.dime.dime_explainer import DimeExplainer
from disentangled_explainer.dime.dime_report import DimeReport
from disentangled_explainer.dime.report_rendering import render_dime_report
from disentangled_explainer.disentangle.sample_set import select_sample_set
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.numerics.rng import Rng, derive_seed


class ExplainPoint(PipelineAction[DimeReport]):
    """Explain a point of a split with its six explanations.

    The point is the first member of a sample set of N points drawn from
    the same split. The report goes to ``explain_<split>_<index>.json``
    and its text rendering to the matching ``.txt`` file.
    """

    def __init__(
        self,
        config: RunConfiguration,
        model: BlackBoxModel,
        point_index: int,
        class_index: int | None = None,
        split_name: str = "test",
    ) -> None:
        """Initialise the action.

        :param config: The run configuration.
        :param model: The model under explanation.
        :param point_index: The position of the point in the split.
        :param class_index: The explained class (default: the predicted
            one).
        :param split_name: The split the point comes from.
        """
        super().__init__()
        self.config = config
        self.model = model
        self.point_index = point_index
        self.class_index = class_index
        self.split_name = split_name

    def _action(self) -> DimeReport:
        points = read_splits(self.config.data_dir).get_split(self.split_name)
        if not 0 <= self.point_index < len(points):
            raise ValueError(
                f"Point {self.point_index} is not in the {self.split_name} "
                f"split ({len(points)} points)."
            )

        samples = select_sample_set(
            points,
            self.point_index,
            self.config.disentangle.n_samples,
            Rng(
                derive_seed(
                    self.config.seed,
                    f"samples:{self.split_name}:{self.point_index}",
                )
            ),
            self.split_name,
        )
        report = DimeExplainer(
            self.model,
            samples,
            self.config.surrogate,
            self.config.seed,
            workers=self.config.workers,
        ).explain(0, self.class_index)

        basename = f"explain_{self.split_name}_{self.point_index}"
        write_json_artifact(
            self.config.out,
            f"{basename}.json",
            {"report": report.to_dict()},
            self.config,
        )
        write_text_artifact(
            self.config.out, f"{basename}.txt", render_dime_report(report)
        )
        return report

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        return []
