"""The steps of the explanation pipeline, one per command.

Every step is a
:py:class:`disentangled_explainer.actions.pipeline_action.PipelineAction`
which runs a procedure, writes its artifacts and evaluates its
acceptance checks.
"""

from .acceptance_check import AcceptanceCheck, ThresholdCheck
from .benchmark import Benchmark, BenchmarkResult
from .explain_point import ExplainPoint
from .generate_data import GenerateData
from .measure_stability import MeasureStability
from .pipeline_action import AcceptanceError, PipelineAction
from .pipeline_action_sequence import PipelineActionSequence
from .run_swap_test import RunSwapTest
from .train_model import TrainModel
from .validate_rq1 import ValidateRq1

__all__ = [
    "AcceptanceCheck",
    "ThresholdCheck",
    "AcceptanceError",
    "PipelineAction",
    "PipelineActionSequence",
    "GenerateData",
    "TrainModel",
    "ExplainPoint",
    "ValidateRq1",
    "RunSwapTest",
    "Benchmark",
    "BenchmarkResult",
    "MeasureStability",
]
