"""Validation pipelines of the disentangled explanations.

- :func:`validate_rq1` correlates the explanations of synthetic points
  with their known ground truths;
- :func:`swap_test` checks that replacing the second modality of a point
  barely moves its unimodal explanation of the first modality, while its
  interaction explanation moves;
- :func:`topk_report` summarises the magnitude of the explanations;
- :func:`categorise` and :func:`explanation_stability` classify points by
  their dominant contribution and measure how much the classification
  depends on the perturbation seed.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np
from tqdm import tqdm

from disentangled_explainer.config.components_config import (
    SurrogateConfiguration,
)
from disentangled_explainer.config.run_config import RunConfiguration
from disentangled_explainer.data.synthetic_dataset import (
    DatasetSplits,
    ground_truth,
)
from disentangled_explainer.disentangle.logit_table import LogitTable
from disentangled_explainer.disentangle.sample_set import (
    SampleSet,
    draw_sample_indices,
    synthetic_sample_set,
)
from disentangled_explainer.dime.dime_explainer import DimeExplainer
from disentangled_explainer.dime.dime_report import DimeReport
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.models.modality_value import ModalityValue
from disentangled_explainer.numerics.rng import Rng, derive_seed
from disentangled_explainer.numerics.statistics import (
    NumericsError,
    RatingsMatrix,
    cosine_distance,
    krippendorff_alpha_nominal,
    pearson,
    topk_mean_abs,
)

_logger = logging.getLogger(__name__)

RQ1_ROWS = ("d1", "d2", "d1*d2")
RQ1_COLUMNS = ("uc1", "mi1", "lime1", "uc2", "mi2", "lime2")


# ----------------------------------------------------------------------
# Correlation with the synthetic ground truth


@dataclass
class Rq1Table:
    """Mean correlations of the explanations with the ground truths.

    ``table[r][c]`` is the mean, over the retained points, of the Pearson
    correlation between the weights of explanation ``RQ1_COLUMNS[c]``
    and the ground truth ``RQ1_ROWS[r]``.
    """

    table: np.ndarray
    n_points: int
    excluded: int
    per_point: list[dict] = field(default_factory=list)
    """Raw correlations (or None, when excluded) of every point."""

    low_fit: list[str] = field(default_factory=list)
    """Identifiers of points whose plain surrogates fit poorly."""

    reports: list[DimeReport] = field(default_factory=list, repr=False)

    def cell(self, row: str, column: str) -> float:
        """A cell by names (e.g., ``cell("d1", "uc1")``)."""
        return float(
            self.table[RQ1_ROWS.index(row), RQ1_COLUMNS.index(column)]
        )

    def to_dict(self) -> dict:
        return {
            "rows": list(RQ1_ROWS),
            "columns": list(RQ1_COLUMNS),
            "table": self.table.tolist(),
            "n_points": self.n_points,
            "excluded": self.excluded,
            "low_fit": list(self.low_fit),
            "per_point": self.per_point,
        }


def correlate_with_ground_truth(
    report: DimeReport, truths: Sequence[np.ndarray]
) -> np.ndarray:
    """The 3 × 6 correlations of one report.

    :param report: The explanations of a synthetic point.
    :param truths: ``(d1, d2, d1 * d2)`` of the point.
    :raises UndefinedCorrelationError: If an explanation or a ground
        truth is constant.
    """
    explanations = report.explanations
    return np.array(
        [
            [
                pearson(explanations[column].weights, truth)
                for column in RQ1_COLUMNS
            ]
            for truth in truths
        ]
    )


def _explain_group(
    model: BlackBoxModel,
    samples: SampleSet,
    n_members: int,
    config: RunConfiguration,
) -> list[DimeReport]:
    explainer = DimeExplainer(
        model, samples, config.surrogate, seed=config.seed
    )
    return explainer.explain_all(
        list(range(n_members)), config.validation.explained_class
    )


def validate_rq1(
    model: BlackBoxModel,
    splits: DatasetSplits,
    n_points: int,
    config: RunConfiguration,
    show_progress: bool = False,
) -> Rq1Table:
    """Correlate explanations of test points with their ground truths.

    ``n_points`` test points are drawn uniformly. They are explained in
    groups of N, each group being the first members of a sample set
    completed with other random test points, so one logit table serves
    N explanations. Groups are independent and may be explained by
    several workers. Points with an undefined correlation are excluded
    from the means and counted.

    :param model: The synthetic-task model.
    :param splits: The dataset (only the test split is used).
    :param n_points: How many test points to explain.
    :param config: The run configuration.
    :param show_progress: Show a progress bar over the groups.
    """
    test = splits.test
    n_samples = config.disentangle.n_samples
    if not 1 <= n_points <= len(test):
        raise ValueError(
            f"Can't explain {n_points} points of a {len(test)}-point split."
        )

    chosen = sorted(
        int(i)
        for i in Rng(derive_seed(config.seed, "rq1-points")).choice(
            len(test), n_points
        )
    )
    groups = [
        chosen[start : start + n_samples]
        for start in range(0, len(chosen), n_samples)
    ]
    sample_sets = [
        synthetic_sample_set(
            test,
            draw_sample_indices(
                len(test),
                group,
                n_samples,
                Rng(derive_seed(config.seed, f"rq1-group:{index}")),
            ),
        )
        for index, group in enumerate(groups)
    ]

    def explain(index: int) -> list[DimeReport]:
        return _explain_group(
            model, sample_sets[index], len(groups[index]), config
        )

    progress = tqdm(
        total=len(groups), desc="validate", disable=not show_progress
    )
    with progress, ThreadPoolExecutor(max_workers=config.workers) as pool:
        group_reports = []
        for reports in pool.map(explain, range(len(groups))):
            group_reports.append(reports)
            progress.update()

    per_point, retained, reports, low_fit = [], [], [], []
    for group, group_report in zip(groups, group_reports):
        for index, report in zip(group, group_report):
            reports.append(report)
            if report.low_fit:
                low_fit.append(report.identifier)
            try:
                correlations = correlate_with_ground_truth(
                    report, ground_truth(test[index])
                )
            except NumericsError as error:
                _logger.warning(
                    "Point %s excluded: %s", report.identifier, error
                )
                per_point.append(
                    {"point": report.identifier, "correlations": None}
                )
                continue
            retained.append(correlations)
            per_point.append(
                {
                    "point": report.identifier,
                    "correlations": correlations.tolist(),
                }
            )

    if not retained:
        raise ValueError("Every explained point was excluded.")
    return Rq1Table(
        table=np.mean(retained, axis=0),
        n_points=n_points,
        excluded=n_points - len(retained),
        per_point=per_point,
        low_fit=low_fit,
        reports=reports,
    )


# ----------------------------------------------------------------------
# Swap test


@dataclass
class SwapTestResult:
    """Mean distances of modality-1 explanations before/after a swap."""

    mean_uc_distance: float
    mean_mi_distance: float
    per_pair: list[dict] = field(default_factory=list)
    excluded: int = 0

    def to_dict(self) -> dict:
        return {
            "mean_uc1_distance": self.mean_uc_distance,
            "mean_mi1_distance": self.mean_mi_distance,
            "pairs": len(self.per_pair),
            "excluded": self.excluded,
            "per_pair": self.per_pair,
        }


def swap_test(
    model: BlackBoxModel,
    samples: SampleSet,
    pairs: Sequence[tuple[int, ModalityValue]],
    class_index: int,
    config: SurrogateConfiguration | None = None,
    seed: int = 0,
) -> SwapTestResult:
    """Compare modality-1 explanations before and after a swap of the
    second modality.

    For each ``(k, replacement)``, point k is explained on the sample
    set, then on a copy where its second modality is ``replacement``
    (same seeds, other samples unchanged). The cosine distances of the
    UC and MI weights of modality 1 are averaged over the pairs; pairs
    where an explanation has all-zero weights are excluded and counted.

    :param model: The model.
    :param samples: The sample set.
    :param pairs: The swaps to test.
    :param class_index: The explained class.
    :param config: The surrogate settings.
    :param seed: The root seed of the perturbations.
    """
    if not pairs:
        raise ValueError("The swap test needs at least one pair.")

    original = DimeExplainer(model, samples, config, seed)
    uc_distances, mi_distances, per_pair = [], [], []
    for k, replacement in pairs:
        before = original.explain(k, class_index)
        swapped = DimeExplainer(
            model, samples.with_value(k, 2, replacement), config, seed
        )
        after = swapped.explain(k, class_index)

        try:
            uc_distance = cosine_distance(
                before.uc1.weights, after.uc1.weights
            )
            mi_distance = cosine_distance(
                before.mi1.weights, after.mi1.weights
            )
        except NumericsError as error:
            _logger.warning(
                "Swap of point %s excluded: %s", before.identifier, error
            )
            per_pair.append({"point": before.identifier, "excluded": True})
            continue
        uc_distances.append(uc_distance)
        mi_distances.append(mi_distance)
        per_pair.append(
            {
                "point": before.identifier,
                "uc1_distance": uc_distance,
                "mi1_distance": mi_distance,
            }
        )

    if not uc_distances:
        raise ValueError("Every swap pair was excluded.")
    return SwapTestResult(
        mean_uc_distance=float(np.mean(uc_distances)),
        mean_mi_distance=float(np.mean(mi_distances)),
        per_pair=per_pair,
        excluded=len(pairs) - len(uc_distances),
    )


# ----------------------------------------------------------------------
# Magnitudes and dominance


@dataclass
class TopkTable:
    """Mean top-k absolute weights: rows UC / MI, columns modality 1 / 2."""

    table: np.ndarray
    k: int
    n_reports: int

    def to_dict(self) -> dict:
        return {
            "rows": ["UC", "MI"],
            "columns": [1, 2],
            "k": self.k,
            "n_reports": self.n_reports,
            "table": self.table.tolist(),
        }


def topk_report(reports: Sequence[DimeReport], k: int = 5) -> TopkTable:
    """Average the top-k absolute weights of the UC and MI explanations.

    :param reports: A nonempty list of reports.
    :param k: How many of the largest weights to average (capped to the
        number of features of each explanation).
    """
    if not reports:
        raise ValueError("The top-k report needs at least one report.")
    table = np.zeros((2, 2))
    for report in reports:
        for row, explanations in enumerate(
            ((report.uc1, report.uc2), (report.mi1, report.mi2))
        ):
            for column, explanation in enumerate(explanations):
                top = min(k, explanation.weights.size)
                table[row, column] += topk_mean_abs(explanation.weights, top)
    return TopkTable(table / len(reports), k, len(reports))


class Dominance(Enum):
    """The contribution that dominates the explanations of a point."""

    MODALITY_1 = 0
    MODALITY_2 = 1
    INTERACTION = 2
    MIXED = 3


DOMINANCE_RATIO = 1.5
"""How much stronger than the others a contribution must be to
dominate."""


def categorise(
    report: DimeReport, k: int = 5, ratio: float = DOMINANCE_RATIO
) -> Dominance:
    """Classify a point by its strongest contribution.

    The strength of the unimodal contribution of each modality is the
    top-k mean absolute weight of its UC explanation; the strength of
    the interaction is the mean of those of the two MI explanations. The
    strongest contribution dominates when it is at least ``ratio`` times
    the second strongest; otherwise the point is mixed.
    """

    def strength(weights: np.ndarray) -> float:
        return topk_mean_abs(weights, min(k, weights.size))

    strengths = {
        Dominance.MODALITY_1: strength(report.uc1.weights),
        Dominance.MODALITY_2: strength(report.uc2.weights),
        Dominance.INTERACTION: (
            strength(report.mi1.weights) + strength(report.mi2.weights)
        )
        / 2,
    }
    ranked = sorted(strengths, key=strengths.get, reverse=True)
    first, second = strengths[ranked[0]], strengths[ranked[1]]
    if first > 0 and first >= ratio * second:
        return ranked[0]
    return Dominance.MIXED


@dataclass
class StabilityReport:
    """Agreement of the dominance categories across seeds."""

    alpha: float
    seeds: list[int]
    identifiers: list[str]
    categories: list[list[str]]
    """``categories[r][i]``: category of point i under seed r."""

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "seeds": self.seeds,
            "points": self.identifiers,
            "categories": self.categories,
        }


def explanation_stability(
    model: BlackBoxModel,
    samples: SampleSet,
    indices: Sequence[int],
    n_seeds: int,
    class_index: int | None = None,
    config: SurrogateConfiguration | None = None,
    seed: int = 0,
    k: int = 5,
    table: LogitTable | None = None,
) -> StabilityReport:
    """Krippendorff's alpha of the dominance categories across seeds.

    Points are explained under ``n_seeds`` perturbation seeds derived
    from ``seed``, sharing one logit table. Seeds play the annotators,
    points the items.

    :raises InsufficientDataError: If no point was categorised by two
        seeds.
    """
    if n_seeds < 2:
        raise ValueError("Stability needs at least 2 seeds.")
    if not indices:
        raise ValueError("Stability needs at least one point.")

    seeds = [derive_seed(seed, f"stability:{r}") for r in range(n_seeds)]
    categories: list[list[Dominance]] = []
    for run_seed in seeds:
        explainer = DimeExplainer(model, samples, config, run_seed, table)
        table = explainer.table
        categories.append(
            [
                categorise(report, k)
                for report in explainer.explain_all(list(indices), class_index)
            ]
        )

    alpha = krippendorff_alpha_nominal(
        RatingsMatrix(np.array([[c.value for c in row] for row in categories]))
    )
    _logger.info(
        "Dominance agreement over %d seeds: alpha=%.4f", n_seeds, alpha
    )
    return StabilityReport(
        alpha=alpha,
        seeds=seeds,
        identifiers=[samples.identifiers[i] for i in indices],
        categories=[[c.name for c in row] for row in categories],
    )
