"""Measure the cost of an explanation with a cold and a warm table."""

import time
from dataclasses import dataclass

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
from disentangled_explainer.dime.dime_explainer import DimeExplainer
from disentangled_explainer.disentangle.sample_set import select_sample_set
from disentangled_explainer.models.black_box_model import (
    BlackBoxModel,
    CountingModel,
)
from disentangled_explainer.numerics.rng import Rng, derive_seed

BENCH_FILENAME = "bench.json"
BENCH_TIMES_FILENAME = "bench_times.txt"


@dataclass
class BenchmarkResult:
    """Model evaluations (and wall times) of a cold and a warm run."""

    n_samples: int
    lime_samples: int
    cold_evaluations: int
    warm_evaluations: int
    cold_seconds: float
    warm_seconds: float

    @property
    def expected_cold_evaluations(self) -> int:
        return self.n_samples**2 + self.expected_warm_evaluations

    @property
    def expected_warm_evaluations(self) -> int:
        return 2 * self.lime_samples * self.n_samples

    def to_dict(self) -> dict:
        """The deterministic part of the result (wall times excluded)."""
        return {
            "n_samples": self.n_samples,
            "lime_samples": self.lime_samples,
            "cold_evaluations": self.cold_evaluations,
            "warm_evaluations": self.warm_evaluations,
            "expected_cold_evaluations": self.expected_cold_evaluations,
            "expected_warm_evaluations": self.expected_warm_evaluations,
        }


class Benchmark(PipelineAction[BenchmarkResult]):
    """Explain a test point twice, counting the model evaluations.

    The first explanation builds the logit table (cold), the second
    reuses it (warm). Counts go to ``bench.json``; wall times, which
    change from run to run, go to ``bench_times.txt``.
    """

    def __init__(
        self,
        config: RunConfiguration,
        model: BlackBoxModel,
        point_index: int = 0,
    ) -> None:
        super().__init__()
        self.config = config
        self.model = model
        self.point_index = point_index

    def _action(self) -> BenchmarkResult:
        test = read_splits(self.config.data_dir).test
        samples = select_sample_set(
            test,
            self.point_index,
            self.config.disentangle.n_samples,
            Rng(derive_seed(self.config.seed, "bench-samples")),
        )
        counting = CountingModel(self.model)
        explainer = DimeExplainer(
            counting,
            samples,
            self.config.surrogate,
            self.config.seed,
            workers=self.config.workers,
        )

        start = time.perf_counter()
        explainer.explain(0)
        cold_seconds = time.perf_counter() - start
        cold_evaluations = counting.evaluations

        counting.reset()
        start = time.perf_counter()
        explainer.explain(0)
        warm_seconds = time.perf_counter() - start

        result = BenchmarkResult(
            n_samples=samples.n,
            lime_samples=self.config.surrogate.lime_samples,
            cold_evaluations=cold_evaluations,
            warm_evaluations=counting.evaluations,
            cold_seconds=cold_seconds,
            warm_seconds=warm_seconds,
        )
        write_json_artifact(
            self.config.out,
            BENCH_FILENAME,
            {"bench": result.to_dict()},
            self.config,
        )
        write_text_artifact(
            self.config.out,
            BENCH_TIMES_FILENAME,
            f"cold: {cold_evaluations} evaluations, {cold_seconds:.3f} s\n"
            f"warm: {result.warm_evaluations} evaluations, "
            f"{warm_seconds:.3f} s",
        )
        return result

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        result = self.get_last_execution_result()
        return [
            ThresholdCheck(
                "cold run evaluations",
                lambda: result.cold_evaluations,
                minimum=result.expected_cold_evaluations,
                maximum=result.expected_cold_evaluations,
            ),
            ThresholdCheck(
                "warm run evaluations",
                lambda: result.warm_evaluations,
                minimum=result.expected_warm_evaluations,
                maximum=result.expected_warm_evaluations,
            ),
        ]
