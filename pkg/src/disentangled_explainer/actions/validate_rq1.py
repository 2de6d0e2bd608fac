"""Correlate explanations of synthetic points with their ground truths."""

from disentangled_explainer.actions.acceptance_check import (
    AcceptanceCheck,
    ThresholdCheck,
)
from disentangled_explainer.actions.pipeline_action import PipelineAction
from disentangled_explainer.actions.utils.artifacts import (
    write_json_artifact,
    write_text_artifact,
)
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.dataset_io import read_splits
from disentangled_explainer.dime.report_rendering import (
    render_rq1_table,
    render_topk_table,
)
from disentangled_explainer.dime.validation import (
    Rq1Table,
    topk_report,
    validate_rq1,
)
from disentangled_explainer.models.black_box_model import BlackBoxModel

VALIDATION_FILENAME = "validate"

# (ground truth, explanation) cells the explanations should follow
UC_TARGETS = (("d1", "uc1"), ("d2", "uc2"))
MI_TARGETS = (("d1*d2", "mi1"), ("d1*d2", "mi2"))
OFF_TARGETS = (
    ("d2", "uc1"),
    ("d1*d2", "uc1"),
    ("d1", "uc2"),
    ("d1*d2", "uc2"),
    ("d1", "mi1"),
    ("d2", "mi1"),
    ("d1", "mi2"),
    ("d2", "mi2"),
)
LIME_TARGETS = (
    ("d1", "lime1"),
    ("d1*d2", "lime1"),
    ("d2", "lime2"),
    ("d1*d2", "lime2"),
)


class ValidateRq1(PipelineAction[Rq1Table]):
    """Explain random test points and check the correlation pattern.

    Unimodal explanations must follow their own modality, interaction
    explanations the product ``d1*d2``, every other disentangled cell
    must stay near zero and the plain surrogates must correlate only
    moderately with their targets. The thresholds come from the
    validation section of the configuration.

    Writes ``validate.json`` (table, per-point correlations, top-k
    magnitudes) and ``validate.txt``.
    """

    def __init__(
        self,
        config: RunConfiguration,
        model: BlackBoxModel,
        show_progress: bool = False,
    ) -> None:
        super().__init__()
        self.config = config
        self.model = model
        self.show_progress = show_progress

    def _action(self) -> Rq1Table:
        splits = read_splits(self.config.data_dir)
        table = validate_rq1(
            self.model,
            splits,
            self.config.validation.n_points,
            self.config,
            show_progress=self.show_progress,
        )
        topk = topk_report(table.reports, self.config.validation.top_k)

        write_json_artifact(
            self.config.out,
            f"{VALIDATION_FILENAME}.json",
            {"rq1": table.to_dict(), "topk": topk.to_dict()},
            self.config,
        )
        write_text_artifact(
            self.config.out,
            f"{VALIDATION_FILENAME}.txt",
            render_rq1_table(table) + "\n\n" + render_topk_table(topk),
        )
        return table

    def _cell_check(self, row: str, column: str, **bounds) -> ThresholdCheck:
        return ThresholdCheck(
            f"corr({column.upper()}, {row})",
            lambda: self.get_last_execution_result().cell(row, column),
            **bounds,
        )

    def _abs_cell_check(self, row: str, column: str) -> ThresholdCheck:
        limit = self.config.validation.off_target_max_abs_correlation
        return ThresholdCheck(
            f"|corr({column.upper()}, {row})|",
            lambda: abs(self.get_last_execution_result().cell(row, column)),
            maximum=limit,
        )

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        validation = self.config.validation
        return (
            [
                self._cell_check(
                    row, column, minimum=validation.uc_min_correlation
                )
                for row, column in UC_TARGETS
            ]
            + [
                self._cell_check(
                    row, column, minimum=validation.mi_min_correlation
                )
                for row, column in MI_TARGETS
            ]
            + [self._abs_cell_check(row, col) for row, col in OFF_TARGETS]
            + [
                self._cell_check(
                    row,
                    column,
                    minimum=validation.lime_min_correlation,
                    maximum=validation.lime_max_correlation,
                )
                for row, column in LIME_TARGETS
            ]
        )
