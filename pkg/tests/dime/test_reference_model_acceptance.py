"""Acceptance run on the trained reference MLP (slow, deselected by
default: run with ``pytest -m acceptance``)."""

import pytest
from assertpy import assert_that

from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.synthetic_dataset import generate
from disentangled_explainer.dime import validate_rq1
from disentangled_explainer.models import mlp_train


@pytest.mark.acceptance
class TestReferenceModelAcceptance:
    """The explanations of the trained MLP recover the ground truths."""

    @pytest.fixture(scope="class")
    def rq1_table(self):
        """Correlations of 200 explained test points."""
        config = RunConfiguration()
        splits = generate(seed=config.seed, n=100_000)
        model, report = mlp_train(splits, config.seed)
        assert_that(report.test_accuracy).is_greater_than_or_equal_to(0.95)
        return validate_rq1(
            model, splits, config.validation.n_points, config
        ), config.validation

    def test_unimodal_explanations(self, rq1_table):
        """UC1 follows d1 and UC2 follows d2."""
        table, thresholds = rq1_table

        assert_that(table.cell("d1", "uc1")).is_greater_than_or_equal_to(
            thresholds.uc_min_correlation
        )
        assert_that(table.cell("d2", "uc2")).is_greater_than_or_equal_to(
            thresholds.uc_min_correlation
        )

    def test_interaction_explanations(self, rq1_table):
        """MI1 and MI2 follow d1 * d2."""
        table, thresholds = rq1_table

        for column in ("mi1", "mi2"):
            assert_that(
                table.cell("d1*d2", column)
            ).is_greater_than_or_equal_to(thresholds.mi_min_correlation)

    def test_plain_explanations_mix_both(self, rq1_table):
        """LIME1 and LIME2 correlate partially with both truths."""
        table, thresholds = rq1_table

        for row, column in [
            ("d1", "lime1"),
            ("d1*d2", "lime1"),
            ("d2", "lime2"),
            ("d1*d2", "lime2"),
        ]:
            assert_that(table.cell(row, column)).is_between(
                thresholds.lime_min_correlation,
                thresholds.lime_max_correlation,
            )
