"""Random masked perturbations of a value around itself."""

import logging
from dataclasses import dataclass

import numpy as np

from disentangled_explainer.models.modality_value import ModalityValue
from disentangled_explainer.numerics.rng import Rng
from disentangled_explainer.surrogate.feature_space import FeatureSpace

_logger = logging.getLogger(__name__)


def kernel_weights(masks: np.ndarray, kernel_width: float) -> np.ndarray:
    """Proximity of each mask to the all-ones mask.

    ``exp(-(h / F)^2 / width^2)``, where ``h`` is the number of masked
    features and F the number of features.
    """
    masks = np.asarray(masks)
    distance = (masks.shape[1] - masks.sum(axis=1)) / masks.shape[1]
    return np.exp(-(distance**2) / kernel_width**2)


@dataclass(frozen=True)
class PerturbationBatch:
    """S masks over the features of a value, with their realisations.

    Row 0 of the masks is the all-ones mask (the unperturbed value); it
    appears only once, unless the keep probability is 1.
    """

    masks: np.ndarray
    """S × F matrix of zeros and ones (1 = feature kept)."""

    values: tuple[ModalityValue, ...]
    """Value s is the original value with mask s applied."""

    kernel_weights: np.ndarray
    """S proximity weights in (0, 1]."""

    seed: int
    keep_probability: float
    kernel_width: float

    @property
    def size(self) -> int:
        return self.masks.shape[0]

    @property
    def identical_masks(self) -> bool:
        """True when every mask is the same (nothing can be fitted)."""
        return bool(np.all(self.masks == self.masks[0]))


def perturb(
    value: ModalityValue,
    feature_space: FeatureSpace,
    n_samples: int,
    seed: int,
    keep_probability: float = 0.5,
    kernel_width: float = 0.25,
) -> PerturbationBatch:
    """Draw S masked perturbations of a value.

    Each feature of each mask is kept independently with
    ``keep_probability``. Row 0 is the all-ones mask; the other rows are
    redrawn while they are all ones, so the unperturbed value appears
    exactly once.

    :param value: The value to perturb.
    :param feature_space: Its features.
    :param n_samples: S, at least F + 2.
    :param seed: The seed of the masks.
    :param keep_probability: Probability of keeping each feature.
    :param kernel_width: Width of the proximity kernel.
    """
    n_features = feature_space.feature_count
    if n_samples < n_features + 2:
        raise ValueError(
            f"{n_samples} perturbations can't fit {n_features} features "
            f"(at least {n_features + 2} needed)."
        )
    if not 0 < keep_probability <= 1:
        raise ValueError("The keep probability must be in (0, 1].")
    if kernel_width <= 0:
        raise ValueError("The kernel width must be positive.")

    rng = Rng(seed)
    masks = np.ones((n_samples, n_features), dtype=np.int8)
    masks[1:] = rng.bernoulli(keep_probability, (n_samples - 1, n_features))
    if keep_probability < 1:
        redraw = np.flatnonzero(masks[1:].all(axis=1)) + 1
        while redraw.size:
            masks[redraw] = rng.bernoulli(
                keep_probability, (redraw.size, n_features)
            )
            redraw = redraw[masks[redraw].all(axis=1)]
    else:
        _logger.warning(
            "Keep probability 1: every perturbation is the original value."
        )
    masks.setflags(write=False)

    weights = kernel_weights(masks, kernel_width)
    weights.setflags(write=False)
    return PerturbationBatch(
        masks=masks,
        values=tuple(feature_space.apply_mask(value, m) for m in masks),
        kernel_weights=weights,
        seed=seed,
        keep_probability=keep_probability,
        kernel_width=kernel_width,
    )
