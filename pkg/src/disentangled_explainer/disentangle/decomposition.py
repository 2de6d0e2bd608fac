"""Unimodal contributions and multimodal interactions of a model output.

The unimodal contribution of a point ``(x1, x2)`` is the projection of
the model on additive functions, estimated with empirical means over the
sample set::

    UC(x1, x2) = E_x2' M(x1, x2') + E_x1' M(x1', x2) - E_x1',x2' M(x1', x2')

and the multimodal interaction is what remains: ``MI = M - UC``. For
sample k, the two first terms are row k and column k means of the logit
table and the last one its grand mean.

A perturbation of one modality of sample k changes a single row (first
modality) or column (second modality) of the table: the decomposition of
the perturbed point needs N fresh evaluations and O(N) sum updates, never
a rebuild of the table.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from disentangled_explainer.disentangle.logit_table import (
    LogitTable,
    ordered_sum,
)
from disentangled_explainer.disentangle.sample_set import SampleSet
from disentangled_explainer.models.black_box_model import BlackBoxModel
from disentangled_explainer.models.modality_value import ModalityValue


@dataclass(frozen=True)
class DecomposedLogits:
    """Full logits split into unimodal and interaction parts.

    Fields are C-vectors for a single point, or S × C matrices for a
    batch of perturbations. ``full == uc + mi`` up to rounding.
    """

    full: np.ndarray
    uc: np.ndarray
    mi: np.ndarray

    def for_class(self, class_index: int) -> "DecomposedLogits":
        """The same decomposition restricted to one class."""
        return DecomposedLogits(
            self.full[..., class_index],
            self.uc[..., class_index],
            self.mi[..., class_index],
        )

    def to_dict(self) -> dict:
        return {
            "full": np.asarray(self.full).tolist(),
            "uc": np.asarray(self.uc).tolist(),
            "mi": np.asarray(self.mi).tolist(),
        }


def _decompose(
    full: np.ndarray,
    row_sum: np.ndarray,
    col_sum: np.ndarray,
    grand_sum: np.ndarray,
    n: int,
) -> DecomposedLogits:
    uc = row_sum / n + col_sum / n - grand_sum / (n * n)
    return DecomposedLogits(full, uc, full - uc)


def decompose_point(table: LogitTable, k: int) -> DecomposedLogits:
    """Decompose the model output of sample k.

    :param table: The logit table of the sample set.
    :param k: The sample index, ``0 <= k < N``.
    """
    _check_index(table, k)
    return _decompose(
        table.logits[k, k].copy(),
        table.row_sums[k],
        table.col_sums[k],
        table.grand_sum,
        table.n,
    )


def decompose_perturbed_batch(
    table: LogitTable,
    samples: SampleSet,
    k: int,
    side: int,
    perturbed: Sequence[ModalityValue],
    model: BlackBoxModel,
) -> DecomposedLogits:
    """Decompose sample k with one modality replaced, for S replacements.

    For each replacement v, the result is what :func:`decompose_point`
    returns on a table whose row k (``side=1``: v paired with every
    second value) or column k (``side=2``: every first value paired
    with v) is re-evaluated. The table itself is left untouched.

    All the S × N evaluations are issued in a single batch.

    :param table: The logit table of ``samples``.
    :param samples: The sample set.
    :param k: The perturbed sample.
    :param side: The perturbed modality, 1 or 2.
    :param perturbed: The S replacement values.
    :param model: The model the table was built with.
    :return: Decomposed logits as S × C matrices.
    :raises GatewayError: If the model fails.
    """
    _check_index(table, k)
    if samples.n != table.n:
        raise ValueError("The sample set does not match the table.")
    n, s = table.n, len(perturbed)

    if side == 1:
        seconds = samples.values(2)
        pairs = [(v, x2) for v in perturbed for x2 in seconds]
    elif side == 2:
        firsts = samples.values(1)
        pairs = [(x1, v) for v in perturbed for x1 in firsts]
    else:
        raise ValueError(f"The modality side must be 1 or 2 (got {side}).")

    # fresh[s, i]: new row k (side 1) or new column k (side 2)
    fresh = model.evaluate_batch(pairs).reshape(s, n, table.num_classes)
    fresh_sums = ordered_sum(fresh, axis=1)

    # The crossing line keeps its values except at position k.
    if side == 1:
        crossing = np.repeat(table.logits[None, :, k, :], s, axis=0)
        old_sum = table.row_sums[k]
    else:
        crossing = np.repeat(table.logits[None, k, :, :], s, axis=0)
        old_sum = table.col_sums[k]
    crossing[:, k, :] = fresh[:, k, :]
    crossing_sums = ordered_sum(crossing, axis=1)
    grand_sums = table.grand_sum + (fresh_sums - old_sum)

    if side == 1:
        row_sums, col_sums = fresh_sums, crossing_sums
    else:
        row_sums, col_sums = crossing_sums, fresh_sums
    return _decompose(fresh[:, k, :], row_sums, col_sums, grand_sums, n)


def decompose_perturbed(
    table: LogitTable,
    k: int,
    side: int,
    perturbed: ModalityValue,
    model: BlackBoxModel,
    samples: SampleSet,
) -> DecomposedLogits:
    """Decompose sample k with one modality replaced by ``perturbed``.

    It issues exactly N model evaluations. When ``perturbed`` equals the
    original value, the result is bit-identical to
    :func:`decompose_point`.
    """
    batch = decompose_perturbed_batch(
        table, samples, k, side, [perturbed], model
    )
    return DecomposedLogits(batch.full[0], batch.uc[0], batch.mi[0])


def mi_grid(table: LogitTable) -> np.ndarray:
    """The interaction part of every cross pairing of the table.

    ``grid[i, j] = L[i, j] - row_mean_i - col_mean_j + grand_mean``; its
    row and column means are all zero.
    """
    return (
        table.logits
        - table.row_means[:, None, :]
        - table.col_means[None, :, :]
        + table.grand_mean
    )


def uc_grid(table: LogitTable) -> np.ndarray:
    """The unimodal part of every cross pairing of the table."""
    return table.logits - mi_grid(table)


def _check_index(table: LogitTable, k: int) -> None:
    if not 0 <= k < table.n:
        raise IndexError(f"Sample {k} is outside the table (N={table.n}).")
