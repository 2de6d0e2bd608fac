"""Train the reference MLP on the synthetic dataset."""

from pathlib import Path

from disentangled_explainer.actions.acceptance_check import (
    AcceptanceCheck,
    ThresholdCheck,
)
from disentangled_explainer.actions.pipeline_action import PipelineAction
from disentangled_explainer.actions.utils.artifacts import (
    write_json_artifact,
)
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.dataset_io import read_splits
from disentangled_explainer.models.mlp_trainer import (
    TrainingHyperparameters,
    TrainingReport,
    mlp_train,
)

TRAINING_REPORT_FILENAME = "train_report.json"


class TrainModel(PipelineAction[TrainingReport]):
    """Train the MLP, save it and report its accuracy.

    The model is written to ``model.model_path`` and the report to
    ``train_report.json`` in the output directory, both before the
    acceptance check, so a model below the accuracy floor can still be
    inspected.
    """

    def __init__(
        self, config: RunConfiguration, show_progress: bool = False
    ) -> None:
        super().__init__()
        self.config = config
        self.show_progress = show_progress

    def _action(self) -> TrainingReport:
        splits = read_splits(self.config.data_dir)
        training = self.config.training
        model, report = mlp_train(
            splits,
            self.config.seed,
            TrainingHyperparameters(
                epochs=training.epochs,
                batch_size=training.batch_size,
                learning_rate=training.learning_rate,
                momentum=training.momentum,
            ),
            show_progress=self.show_progress,
        )
        model_path = Path(self.config.model.model_path)
        model_path.parent.mkdir(parents=True, exist_ok=True)
        model.save(model_path, self.config.to_dict())
        write_json_artifact(
            self.config.out,
            TRAINING_REPORT_FILENAME,
            {"report": report.to_dict()},
            self.config,
        )
        self._log(f"Test accuracy: {report.test_accuracy:.4f}")
        return report

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        return [
            ThresholdCheck(
                "test accuracy",
                lambda: self.get_last_execution_result().test_accuracy,
                minimum=self.config.training.accuracy_floor,
            )
        ]
