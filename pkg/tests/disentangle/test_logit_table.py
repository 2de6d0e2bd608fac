"""Unit tests for the logit table."""

import numpy as np
import pytest
from assertpy import assert_that

from disentangled_explainer.disentangle import (
    LogitTable,
    build_logit_table,
    ordered_sum,
)
from disentangled_explainer.models import (
    AdditiveModel,
    CountingModel,
    ProductModel,
)
from disentangled_explainer.numerics.rng import Rng
from tests.disentangle.utils import (
    interaction_model,
    random_dense_samples,
    sign_samples,
)


class TestBuildLogitTable:
    """Unit tests for build_logit_table."""

    def test_entries_are_cross_pairings(self):
        """L[i, j] is M(x1_i, x2_j) for N = 2."""
        model = interaction_model()
        samples = random_dense_samples(0, 2)
        table = build_logit_table(model, samples)

        firsts, seconds = samples.values(1), samples.values(2)
        for i in range(2):
            for j in range(2):
                np.testing.assert_array_equal(
                    table.logits[i, j], model.evaluate(firsts[i], seconds[j])
                )

    def test_sign_product_table(self):
        """x1 * x2 on {-1, +1} gives [[1, -1], [-1, 1]]."""
        table = build_logit_table(ProductModel(), sign_samples())
        np.testing.assert_array_equal(
            table.logits[:, :, 0], [[1.0, -1.0], [-1.0, 1.0]]
        )

    def test_additive_model_satisfies_the_exchange_identity(self):
        """L[i, j] + L[k, l] = L[i, l] + L[k, j] for additive models."""
        model = AdditiveModel.random(Rng(1), (3, 3), num_classes=2)
        logits = build_logit_table(model, random_dense_samples(1, 5)).logits

        for i, j, k, l in np.ndindex(5, 5, 5, 5):
            np.testing.assert_allclose(
                logits[i, j] + logits[k, l],
                logits[i, l] + logits[k, j],
                atol=1e-9,
            )

    def test_exactly_n_squared_evaluations(self):
        """Building an N = 6 table costs 36 evaluations."""
        model = CountingModel(interaction_model())
        build_logit_table(model, random_dense_samples(2, 6))

        assert_that(model.evaluations).is_equal_to(36)

    def test_parallel_rows_give_the_same_table(self):
        """Evaluating rows concurrently doesn't change a bit."""
        samples = random_dense_samples(3, 7)
        sequential = build_logit_table(interaction_model(), samples)
        parallel = build_logit_table(interaction_model(), samples, workers=3)

        np.testing.assert_array_equal(parallel.logits, sequential.logits)
        np.testing.assert_array_equal(
            parallel.grand_sum, sequential.grand_sum
        )

    def test_identifiers_come_from_the_samples(self):
        """The table remembers which samples it was built on."""
        table = build_logit_table(interaction_model(), sign_samples())
        assert_that(table.identifiers).is_equal_to(("0", "1"))


class TestLogitTable:
    """Unit tests for the cached sums and the persistence."""

    @pytest.fixture
    def table(self) -> LogitTable:
        """A 6-sample table of the interaction model."""
        return build_logit_table(
            interaction_model(), random_dense_samples(4, 6)
        )

    def test_cached_means_match_recomputed_means(self, table):
        """Row, column and grand means agree with numpy's means."""
        np.testing.assert_allclose(
            table.row_means, table.logits.mean(axis=1), rtol=0, atol=1e-12
        )
        np.testing.assert_allclose(
            table.col_means, table.logits.mean(axis=0), rtol=0, atol=1e-12
        )
        np.testing.assert_allclose(
            table.grand_mean,
            table.logits.mean(axis=(0, 1)),
            rtol=0,
            atol=1e-12,
        )

    def test_table_is_read_only(self, table):
        """Nobody can write into a table."""
        with pytest.raises(ValueError):
            table.logits[0, 0, 0] = 1.0

    def test_ordered_sum_ignores_the_memory_layout(self):
        """A row and a column with the same values sum to the same bits."""
        values = np.random.default_rng(5).normal(size=(9, 9))
        symmetric = values + values.T

        np.testing.assert_array_equal(
            ordered_sum(symmetric, axis=1), ordered_sum(symmetric, axis=0)
        )

    @pytest.mark.parametrize("shape", [(2, 3, 1), (1, 1, 2), (2, 2)])
    def test_malformed_logits_are_rejected(self, shape):
        """A table is a square N x N x C array with N >= 2."""
        with pytest.raises(ValueError):
            LogitTable(np.zeros(shape))

    def test_saved_table_is_reloaded(self, table, tmp_path):
        """Logits, identifiers and means survive a save/load cycle."""
        path = tmp_path / "table.msgpack"
        table.save(path)

        reloaded = LogitTable.load(path)

        np.testing.assert_array_equal(reloaded.logits, table.logits)
        assert_that(reloaded.identifiers).is_equal_to(table.identifiers)
        np.testing.assert_allclose(
            reloaded.row_means, table.row_means, rtol=0, atol=1e-12
        )

    def test_foreign_file_is_rejected(self, tmp_path):
        """Only logit table files can be loaded."""
        path = tmp_path / "table.msgpack"
        path.write_bytes(b"\x80")

        with pytest.raises(ValueError):
            LogitTable.load(path)

    def test_predicted_class(self):
        """The predicted class is the argmax of the diagonal entry."""
        table = build_logit_table(ProductModel(2), sign_samples())

        assert_that(table.predicted_class(0)).is_equal_to(1)
        assert_that(table.predicted_class(1)).is_equal_to(1)
