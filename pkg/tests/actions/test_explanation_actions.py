"""Unit tests for the explanation and validation actions."""

import json
from pathlib import Path

import pytest
from assertpy import assert_that

from disentangled_explainer.actions import (
    AcceptanceError,
    Benchmark,
    ExplainPoint,
    MeasureStability,
    RunSwapTest,
    ValidateRq1,
)
from tests.actions.utils import (
    generate_small_dataset,
    small_run_configuration,
)
from tests.dime.utils import ScoreModel


@pytest.fixture
def config(tmp_path):
    """A fast configuration with a generated dataset."""
    config = small_run_configuration(tmp_path)
    generate_small_dataset(config)
    return config


def read_artifact(config, filename: str) -> dict:
    """The content of a JSON artifact of the run."""
    return json.loads((Path(config.out) / filename).read_text("utf-8"))


class TestExplainPoint:
    """Unit tests for ExplainPoint."""

    def test_report_and_rendering_are_written(self, config):
        """The explained point is the first member of its sample set."""
        report = ExplainPoint(config, ScoreModel(), 3, class_index=1).execute()

        artifact = read_artifact(config, "explain_test_3.json")
        assert_that(report.identifier).is_equal_to("test:3")
        assert_that(artifact["report"]["identifier"]).is_equal_to("test:3")
        assert_that(artifact["report"]["class"]).is_equal_to(1)
        assert_that(
            (Path(config.out) / "explain_test_3.txt").read_text("utf-8")
        ).starts_with("Point test:3")

    def test_other_splits(self, config):
        """Points can come from the training split too."""
        report = ExplainPoint(
            config, ScoreModel(), 100, split_name="train"
        ).execute()

        assert_that(report.identifier).is_equal_to("train:100")

    def test_point_outside_the_split(self, config):
        """The index must be inside the split."""
        with pytest.raises(ValueError):
            ExplainPoint(config, ScoreModel(), 20).execute()

    def test_reruns_are_byte_identical(self, config):
        """Same configuration, same artifact bytes."""
        path = Path(config.out) / "explain_test_0.json"
        ExplainPoint(config, ScoreModel(), 0).execute()
        first = path.read_bytes()
        ExplainPoint(config, ScoreModel(), 0).execute()

        assert_that(path.read_bytes()).is_equal_to(first)


class TestValidateRq1:
    """Unit tests for ValidateRq1."""

    def test_table_and_topk_are_written(self, config):
        """Both tables go to the validation artifacts."""
        action = ValidateRq1(config, ScoreModel())
        action.set_acceptance_policy(False)

        table = action.execute()

        artifact = read_artifact(config, "validate.json")
        assert_that(artifact).contains_key("rq1", "topk", "config")
        assert_that(artifact["rq1"]["n_points"]).is_equal_to(table.n_points)
        assert_that(
            (Path(config.out) / "validate.txt").read_text("utf-8")
        ).contains("UC1", "top-3")

    def test_criteria_cover_every_cell(self, config):
        """Every disentangled cell is checked, plus the plain bands."""
        action = ValidateRq1(config, ScoreModel())
        action.set_acceptance_policy(False)
        action.execute()

        assert_that(action.acceptance_criteria()).is_length(16)

    def test_unreachable_threshold_fails(self, config):
        """A threshold above 1 can't be met."""
        config.validation.uc_min_correlation = 1.01

        with pytest.raises(AcceptanceError, match="UC1"):
            ValidateRq1(config, ScoreModel()).execute()
        assert_that(
            (Path(config.out) / "validate.json").exists()
        ).is_true()

    def test_reruns_are_byte_identical(self, config):
        """Same configuration, same artifact bytes."""
        path = Path(config.out) / "validate.json"
        contents = []
        for _ in range(2):
            action = ValidateRq1(config, ScoreModel())
            action.set_acceptance_policy(False)
            action.execute()
            contents.append(path.read_bytes())

        assert_that(contents[1]).is_equal_to(contents[0])


class TestRunSwapTest:
    """Unit tests for RunSwapTest."""

    def test_pairs_are_explained_and_written(self, config):
        """One entry per swap pair."""
        action = RunSwapTest(config, ScoreModel())
        action.set_acceptance_policy(False)

        result = action.execute()

        assert_that(result.per_pair).is_length(4)
        assert_that(
            read_artifact(config, "swaptest.json")["swap_test"]["pairs"]
        ).is_equal_to(4)
        assert_that(action.acceptance_criteria()).is_length(2)

    def test_not_enough_donors(self, config):
        """Donors come from outside the sample set."""
        config.validation.swap_pairs = 13

        with pytest.raises(ValueError):
            RunSwapTest(config, ScoreModel()).execute()


class TestBenchmark:
    """Unit tests for Benchmark."""

    def test_evaluation_counts(self, config):
        """Cold N^2 + 2SN, warm 2SN: the checks pass."""
        result = Benchmark(config, ScoreModel()).execute()

        assert_that(result.cold_evaluations).is_equal_to(8 * 8 + 2 * 30 * 8)
        assert_that(result.warm_evaluations).is_equal_to(2 * 30 * 8)
        assert_that(read_artifact(config, "bench.json")["bench"]).is_equal_to(
            result.to_dict()
        )
        assert_that(
            (Path(config.out) / "bench_times.txt").exists()
        ).is_true()


class TestMeasureStability:
    """Unit tests for MeasureStability."""

    def test_every_member_is_categorised_by_every_seed(self, config):
        """Two seeds, eight points."""
        report = MeasureStability(config, ScoreModel(), 1).execute()

        assert_that(report.seeds).is_length(2)
        assert_that(report.identifiers).is_length(8)
        assert_that(report.categories[0]).is_length(8)
        assert_that(report.alpha).is_less_than_or_equal_to(1.0)
        assert_that(
            read_artifact(config, "stability.json")["stability"]["alpha"]
        ).is_equal_to(report.alpha)
