"""Unit tests for the disentangled explainer."""

import numpy as np
import pytest
from assertpy import assert_that

from disentangled_explainer.config.components_config import (
    SurrogateConfiguration,
)
from disentangled_explainer.dime import DimeExplainer, dime_explain
from disentangled_explainer.disentangle import SampleSet, build_logit_table
from disentangled_explainer.models import (
    AdditiveModel,
    CountingModel,
    FunctionModel,
    ModalityValue,
)
from disentangled_explainer.numerics.rng import Rng
from disentangled_explainer.surrogate import ExplanationKind
from tests.dime.utils import ScoreModel, rebuilt_explanations
from tests.disentangle.utils import interaction_model, random_dense_samples


@pytest.fixture
def config() -> SurrogateConfiguration:
    """Few perturbations, to keep the tests fast."""
    return SurrogateConfiguration(lime_samples=40)


class TestDimeExplainer:
    """Unit tests for DimeExplainer."""

    def test_matches_a_rebuild_for_every_perturbation(self, config):
        """Incremental and rebuilt decompositions give the same fits."""
        model = interaction_model()
        samples = random_dense_samples(0, 5)

        report = DimeExplainer(model, samples, config, seed=3).explain(2, 1)
        expected = rebuilt_explanations(model, samples, 2, 1, config, 3)

        for name, explanation in report.explanations.items():
            np.testing.assert_allclose(
                explanation.weights,
                expected[name].weights,
                rtol=1e-9,
                atol=1e-9,
            )

    def test_cold_and_warm_evaluation_counts(self, config):
        """N^2 + 2SN evaluations cold, 2SN once the table is built."""
        model = CountingModel(interaction_model())
        n, s = 6, config.lime_samples
        explainer = DimeExplainer(model, random_dense_samples(1, n), config)

        explainer.explain(0)
        cold = model.evaluations
        model.reset()
        explainer.explain(1)

        assert_that(cold).is_equal_to(n * n + 2 * s * n)
        assert_that(model.evaluations).is_equal_to(2 * s * n)
        assert_that(explainer.is_warm).is_true()

    def test_plain_weights_are_unimodal_plus_interaction(self, config):
        """Per modality, lime = uc + mi on the shared perturbations."""
        report = DimeExplainer(
            interaction_model(), random_dense_samples(2, 6), config
        ).explain(4, 0)

        for modality in (1, 2):
            np.testing.assert_allclose(
                report.get(ExplanationKind.FULL, modality).weights,
                report.get(ExplanationKind.UC, modality).weights
                + report.get(ExplanationKind.MI, modality).weights,
                atol=1e-9,
            )

    def test_additive_model_has_no_interaction_weights(self, config):
        """An additive model is explained by its unimodal part only."""
        model = AdditiveModel.random(Rng(4), (3, 3), num_classes=2)
        report = DimeExplainer(
            model, random_dense_samples(3, 6), config
        ).explain(1, 0)

        for modality in (1, 2):
            np.testing.assert_allclose(
                report.get(ExplanationKind.MI, modality).weights,
                0.0,
                atol=1e-9,
            )
            np.testing.assert_allclose(
                report.get(ExplanationKind.UC, modality).weights,
                report.get(ExplanationKind.FULL, modality).weights,
                atol=1e-9,
            )

    def test_explained_class_defaults_to_the_prediction(self, config):
        """Without a class, the argmax of the logits is explained."""
        samples = random_dense_samples(5, 4)
        explainer = DimeExplainer(ScoreModel(), samples, config)
        report = explainer.explain(0)

        assert_that(report.class_index).is_equal_to(report.predicted_class)
        assert_that(report.predicted_class).is_equal_to(
            explainer.table.predicted_class(0)
        )

    def test_unknown_class_is_rejected(self, config):
        """The class must be one of the model's."""
        explainer = DimeExplainer(
            ScoreModel(), random_dense_samples(6, 4), config
        )
        with pytest.raises(ValueError):
            explainer.explain(0, 2)

    def test_table_of_another_sample_set_is_rejected(self, config):
        """A prebuilt table must belong to the sample set."""
        samples = random_dense_samples(7, 4)
        others = SampleSet.from_pairs(samples.points, "abcd")
        table = build_logit_table(ScoreModel(), others)

        with pytest.raises(ValueError):
            DimeExplainer(ScoreModel(), samples, config, table=table)

    def test_perturbation_seeds_follow_the_identifier(self, config):
        """A point gets the same masks in any sample set."""
        samples = random_dense_samples(8, 4)
        reordered = SampleSet.from_pairs(
            samples.points[::-1], samples.identifiers[::-1]
        )

        first = DimeExplainer(ScoreModel(), samples, config, seed=9)
        second = DimeExplainer(ScoreModel(), reordered, config, seed=9)

        assert_that(first.perturbation_seed(0, 1)).is_equal_to(
            second.perturbation_seed(3, 1)
        )
        assert_that(first.perturbation_seed(0, 1)).is_not_equal_to(
            first.perturbation_seed(0, 2)
        )

    def test_explanations_are_reproducible(self, config):
        """Same model, samples and seed give bit-identical reports."""
        samples = random_dense_samples(10, 5)
        first = dime_explain(ScoreModel(), samples, 1, 1, config, seed=11)
        second = dime_explain(ScoreModel(), samples, 1, 1, config, seed=11)

        assert_that(first.to_dict()).is_equal_to(second.to_dict())

    def test_report_contents(self, config):
        """The report names its point, features and six explanations."""
        samples = random_dense_samples(12, 4)
        report = DimeExplainer(ScoreModel(), samples, config).explain(3, 1)
        data = report.to_dict()

        assert_that(data["identifier"]).is_equal_to("3")
        assert_that(data["explanations"]).contains_only(
            "uc1", "uc2", "mi1", "mi2", "lime1", "lime2"
        )
        assert_that(data["feature_labels"][0]).is_equal_to(
            ["dim[0]", "dim[1]", "dim[2]"]
        )
        assert_that(data["provenance"]).contains_entry({"n_samples": 4})

    def test_token_modality(self):
        """Masked tokens are removed before the model sees them."""

        def logits(text: ModalityValue, vector: ModalityValue):
            cats = sum(token == "cat" for token in text.payload)
            return [cats * vector.payload[0] + len(text.payload)]

        samples = SampleSet.from_pairs(
            [
                (ModalityValue.tokens("a cat sat"), ModalityValue.dense([2])),
                (ModalityValue.tokens("dogs bark"), ModalityValue.dense([5])),
                (ModalityValue.tokens("cat"), ModalityValue.dense([-1])),
            ]
        )
        report = DimeExplainer(
            FunctionModel(logits, 1),
            samples,
            SurrogateConfiguration(lime_samples=40, ridge_lambda=0.0),
        ).explain(0, 0)

        assert_that(report.feature_labels[0]).is_equal_to(
            ("a@0", "cat@1", "sat@2")
        )
        np.testing.assert_allclose(
            report.lime1.weights, [1.0, 3.0, 1.0], atol=1e-9
        )
