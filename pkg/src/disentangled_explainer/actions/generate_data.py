"""Generate the synthetic dataset."""

from pathlib import Path

from disentangled_explainer.actions.acceptance_check import AcceptanceCheck
from disentangled_explainer.actions.pipeline_action import PipelineAction
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.dataset_io import write_splits
from disentangled_explainer.data.synthetic_dataset import generate


class GenerateData(PipelineAction[list[Path]]):
    """Generate ``n_points`` synthetic points and write their splits.

    The dataset is generated with the root seed and written to the data
    directory of the configuration (three split files and a manifest).
    """

    def __init__(self, config: RunConfiguration, n_points: int) -> None:
        super().__init__()
        self.config = config
        self.n_points = n_points

    def _action(self) -> list[Path]:
        splits = generate(self.config.seed, self.n_points)
        return write_splits(
            splits,
            self.config.data_dir,
            self.config.seed,
            self.config.to_dict(),
        )

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        return [
            AcceptanceCheck(
                "every split file",
                lambda: all(
                    path.exists() for path in self.get_last_execution_result()
                ),
            )
        ]
