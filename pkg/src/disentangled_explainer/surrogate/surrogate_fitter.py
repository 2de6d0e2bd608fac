"""Kernel-weighted ridge surrogates fitted on perturbation batches."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from disentangled_explainer.models.modality_value import ModalityValue
from disentangled_explainer.numerics.ridge import (
    SingularSystemError,
    weighted_ridge,
)
from disentangled_explainer.surrogate.explanation import (
    Explanation,
    ExplanationKind,
)
from disentangled_explainer.surrogate.feature_space import FeatureSpace
from disentangled_explainer.surrogate.perturbation import (
    PerturbationBatch,
    perturb,
)

ESCALATION_FACTOR = 10.0
MIN_ESCALATED_LAMBDA = 1e-6

_logger = logging.getLogger(__name__)


def _weighted_r2(
    masks: np.ndarray,
    targets: np.ndarray,
    weights: np.ndarray,
    coefficients: np.ndarray,
    intercepts: np.ndarray,
) -> np.ndarray:
    predictions = masks @ coefficients + intercepts
    residual = weights @ (targets - predictions) ** 2
    mean = weights @ targets / weights.sum()
    total = weights @ (targets - mean) ** 2
    scale = np.maximum(weights @ targets**2, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = 1.0 - residual / total
    flat = total <= 1e-24 * scale
    return np.where(flat, np.where(residual <= 1e-24 * scale, 1.0, 0.0), r2)


def fit_targets(
    batch: PerturbationBatch,
    targets: np.ndarray,
    ridge_lambda: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Fit one surrogate per target column on a shared batch.

    All the columns share the masks, the kernel weights and the penalty,
    so the fitted weights are linear in the targets.

    :param batch: The perturbations.
    :param targets: S × T targets.
    :param ridge_lambda: The ridge penalty.
    :return: F × T coefficients, T intercepts, T weighted R² and the
        penalty actually used.
    :raises SingularSystemError: If the system is still singular after
        escalating the penalty once.
    """
    targets = np.asarray(targets, dtype=np.float64)
    if targets.ndim != 2 or targets.shape[0] != batch.size:
        raise ValueError("There must be one row of targets per mask.")
    masks = batch.masks.astype(np.float64)
    weights = batch.kernel_weights

    if batch.identical_masks:
        _logger.warning(
            "All %d masks are identical: the surrogate has zero weights.",
            batch.size,
        )
        coefficients = np.zeros((masks.shape[1], targets.shape[1]))
        intercepts = weights @ targets / weights.sum()
        r2 = np.zeros(targets.shape[1])
        return coefficients, intercepts, r2, ridge_lambda

    try:
        coefficients, intercepts = weighted_ridge(
            masks, targets, weights, ridge_lambda
        )
    except SingularSystemError:
        escalated = max(ESCALATION_FACTOR * ridge_lambda, MIN_ESCALATED_LAMBDA)
        _logger.warning(
            "Singular surrogate fit with lambda=%g, retrying with %g.",
            ridge_lambda,
            escalated,
        )
        ridge_lambda = escalated
        coefficients, intercepts = weighted_ridge(
            masks, targets, weights, ridge_lambda
        )

    intercepts = np.atleast_1d(intercepts)
    r2 = _weighted_r2(masks, targets, weights, coefficients, intercepts)
    return coefficients, intercepts, r2, ridge_lambda


def fit(
    batch: PerturbationBatch,
    targets,
    ridge_lambda: float = 1e-3,
    kind: ExplanationKind = ExplanationKind.FULL,
    modality: int = 1,
    class_index: int = 0,
    provenance: dict | None = None,
) -> Explanation:
    """Fit a single surrogate explanation.

    :param batch: The perturbations.
    :param targets: S class logits, aligned with the masks.
    :param ridge_lambda: The ridge penalty.
    :param kind: What the targets are the output of.
    :param modality: The perturbed modality.
    :param class_index: The explained class.
    :param provenance: Extra provenance to record.
    """
    return fit_many(
        batch,
        np.asarray(targets, dtype=np.float64)[:, None],
        [kind],
        ridge_lambda,
        modality,
        class_index,
        provenance,
    )[0]


def fit_many(
    batch: PerturbationBatch,
    targets: np.ndarray,
    kinds: Sequence[ExplanationKind],
    ridge_lambda: float,
    modality: int,
    class_index: int,
    provenance: dict | None = None,
) -> list[Explanation]:
    """Fit one explanation per target column, on the same batch.

    :param targets: S × len(kinds) targets, column t for ``kinds[t]``.
    """
    coefficients, intercepts, r2, used_lambda = fit_targets(
        batch, targets, ridge_lambda
    )
    provenance = {
        **(provenance or {}),
        "perturbation_seed": batch.seed,
        "lime_samples": batch.size,
        "keep_probability": batch.keep_probability,
        "kernel_width": batch.kernel_width,
        "ridge_lambda": used_lambda,
    }
    return [
        Explanation(
            kind=kind,
            modality=modality,
            class_index=class_index,
            weights=coefficients[:, column],
            intercept=float(intercepts[column]),
            r2=float(r2[column]),
            provenance=provenance,
        )
        for column, kind in enumerate(kinds)
    ]


def explain_modality(
    target_fn: Callable[[ModalityValue], float],
    value: ModalityValue,
    feature_space: FeatureSpace,
    n_samples: int,
    seed: int,
    keep_probability: float = 0.5,
    kernel_width: float = 0.25,
    ridge_lambda: float = 1e-3,
    class_index: int = 0,
    modality: int = 1,
    kind: ExplanationKind = ExplanationKind.FULL,
    workers: int = 1,
) -> Explanation:
    """Explain a scalar function of one modality value.

    The other modalities, if any, are held constant by ``target_fn``.

    :param target_fn: Maps a perturbed value to the explained logit.
    :param value: The explained value.
    :param feature_space: Its features.
    :param n_samples: The number of perturbations S.
    :param seed: The seed of the perturbations.
    :param workers: Number of target evaluations run concurrently.
    """
    batch = perturb(
        value, feature_space, n_samples, seed, keep_probability, kernel_width
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            targets = list(executor.map(target_fn, batch.values))
    else:
        targets = [target_fn(v) for v in batch.values]
    return fit(
        batch,
        np.array(targets, dtype=np.float64),
        ridge_lambda,
        kind=kind,
        modality=modality,
        class_index=class_index,
    )
