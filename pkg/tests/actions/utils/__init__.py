"""Helpers shared by the action tests."""

from pathlib import Path

from disentangled_explainer.actions import GenerateData
from disentangled_explainer.actions.acceptance_check import AcceptanceCheck
from disentangled_explainer.actions.pipeline_action import PipelineAction
from disentangled_explainer.config import (
    DisentangleConfiguration,
    ModelSourceConfiguration,
    RunConfiguration,
    SurrogateConfiguration,
    TrainingConfiguration,
    ValidationConfiguration,
)

DATASET_SIZE = 200
"""Points of the test datasets (20 of them in the test split)."""


def small_run_configuration(directory: Path) -> RunConfiguration:
    """A fast configuration writing everything under ``directory``."""
    return RunConfiguration(
        seed=3,
        out=str(directory / "out"),
        data_dir=str(directory / "data"),
        disentangle=DisentangleConfiguration(n_samples=8),
        surrogate=SurrogateConfiguration(lime_samples=30),
        model=ModelSourceConfiguration(
            model_path=str(directory / "out" / "model.msgpack")
        ),
        training=TrainingConfiguration(epochs=2, accuracy_floor=0.0),
        validation=ValidationConfiguration(
            n_points=5, swap_pairs=4, top_k=3, stability_seeds=2
        ),
    )


def generate_small_dataset(config: RunConfiguration) -> None:
    """Write a small dataset to the data directory of the config."""
    action = GenerateData(config, DATASET_SIZE)
    action.set_logging_policy(False)
    action.execute()


class RecordingAction(PipelineAction[str]):
    """An action that records its executions and returns its name."""

    def __init__(self, name: str, log: list[str], accept: bool = True):
        super().__init__()
        self.name = name
        self.log = log
        self.accept = accept

    def _action(self) -> str:
        self.log.append(self.name)
        return self.name

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        return [AcceptanceCheck(f"{self.name} accepted", lambda: self.accept)]
