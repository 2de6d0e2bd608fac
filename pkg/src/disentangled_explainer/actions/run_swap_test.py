"""Swap the second modality of synthetic points and compare the
explanations of the first one."""

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
from disentangled_explainer.dime.report_rendering import render_swap_test
from disentangled_explainer.dime.validation import SwapTestResult, swap_test
from disentangled_explainer.disentangle.sample_set import (
    draw_sample_indices,
    synthetic_pair,
    synthetic_sample_set,
)
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.numerics.rng import Rng, derive_seed

SWAP_TEST_FILENAME = "swaptest"


class RunSwapTest(PipelineAction[SwapTestResult]):
    """Run the swap test on pairs drawn from the test split.

    A sample set of N test points is drawn; pair p swaps the second
    modality of member ``p mod N`` with the second modality of a test
    point outside the sample set. The unimodal explanation must barely
    move, the interaction explanation must move at least
    ``swap_min_ratio`` times more.

    Writes ``swaptest.json`` and ``swaptest.txt``.
    """

    def __init__(self, config: RunConfiguration, model: BlackBoxModel):
        super().__init__()
        self.config = config
        self.model = model

    def _action(self) -> SwapTestResult:
        test = read_splits(self.config.data_dir).test
        n_samples = self.config.disentangle.n_samples
        n_pairs = self.config.validation.swap_pairs

        members = draw_sample_indices(
            len(test),
            [],
            n_samples,
            Rng(derive_seed(self.config.seed, "swap-samples")),
        )
        taken = set(members)
        outside = [i for i in range(len(test)) if i not in taken]
        if len(outside) < n_pairs:
            raise ValueError(
                f"The test split has {len(outside)} points outside the "
                f"sample set, {n_pairs} swaps are needed."
            )
        donors = Rng(derive_seed(self.config.seed, "swap-pairs")).choice(
            len(outside), n_pairs
        )
        pairs = [
            (p % n_samples, synthetic_pair(test[outside[int(d)]])[1])
            for p, d in enumerate(donors)
        ]

        result = swap_test(
            self.model,
            synthetic_sample_set(test, members),
            pairs,
            self.config.validation.explained_class,
            self.config.surrogate,
            self.config.seed,
        )
        write_json_artifact(
            self.config.out,
            f"{SWAP_TEST_FILENAME}.json",
            {"swap_test": result.to_dict()},
            self.config,
        )
        write_text_artifact(
            self.config.out,
            f"{SWAP_TEST_FILENAME}.txt",
            render_swap_test(result),
        )
        return result

    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        validation = self.config.validation
        return [
            ThresholdCheck(
                "mean UC1 cosine distance",
                lambda: self.get_last_execution_result().mean_uc_distance,
                maximum=validation.swap_uc_max_distance,
            ),
            ThresholdCheck(
                "mean MI1 over UC1 distance ratio",
                self._distance_ratio,
                minimum=validation.swap_min_ratio,
            ),
        ]

    def _distance_ratio(self) -> float:
        result = self.get_last_execution_result()
        if result.mean_uc_distance == 0:
            return float("inf") if result.mean_mi_distance > 0 else 0.0
        return result.mean_mi_distance / result.mean_uc_distance
