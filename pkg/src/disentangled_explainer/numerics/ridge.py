"""Weighted ridge regression with an unpenalised intercept."""

import numpy as np
from scipy import linalg

from disentangled_explainer.numerics.statistics import NumericsError


class SingularSystemError(NumericsError):
    """The normal equations have no unique solution.

    It happens with ``lambda=0`` when the (weighted, centred) design is
    rank deficient. Retry with a positive ``lambda``.
    """


# relative pivot below which a Cholesky factor is considered singular
_PIVOT_TOLERANCE = 1e-10


def weighted_ridge(
    design: np.ndarray,
    targets: np.ndarray,
    weights: np.ndarray,
    ridge_lambda: float,
) -> tuple[np.ndarray, np.ndarray | float]:
    """Fit a weighted ridge regression through the normal equations.

    Minimise ``sum_s w_s (y_s - b - x_s . c)^2 + lambda * |c|^2`` over the
    coefficients ``c`` and the (unpenalised) intercept ``b``. Design and
    targets are centred on their weighted means, so the intercept drops
    out of the penalised system, which is then solved with a Cholesky
    factorisation.

    Several target columns can be fitted at once: they share the same
    factorisation, so the result is linear in the targets.

    :param design: S × F design matrix.
    :param targets: S-vector, or S × T matrix of targets.
    :param weights: S-vector of nonnegative sample weights.
    :param ridge_lambda: Nonnegative penalty on the coefficients.
    :return: The coefficients (F-vector, or F × T) and the intercept
        (a float, or a T-vector).
    :raises ValueError: If shapes mismatch, weights are negative or all
        zero, or lambda is negative.
    :raises SingularSystemError: If the system is singular.
    """
    design = np.asarray(design, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)

    if design.ndim != 2 or design.shape[0] != targets.shape[0]:
        raise ValueError("Design and targets must have the same rows.")
    if weights.shape != (design.shape[0],):
        raise ValueError("There must be one weight per sample.")
    if np.any(weights < 0) or not np.any(weights > 0):
        raise ValueError("Weights must be nonnegative and not all zero.")
    if ridge_lambda < 0:
        raise ValueError("The ridge penalty must be nonnegative.")

    total_weight = weights.sum()
    design_mean = weights @ design / total_weight
    targets_mean = weights @ targets / total_weight
    centred_design = design - design_mean
    centred_targets = targets - targets_mean

    weighted_design = centred_design * weights[:, None]
    gram = centred_design.T @ weighted_design
    gram[np.diag_indices_from(gram)] += ridge_lambda
    moment = weighted_design.T @ centred_targets

    try:
        factor = linalg.cho_factor(gram, lower=True, check_finite=True)
    except linalg.LinAlgError as error:
        raise SingularSystemError(
            f"Singular normal equations (lambda={ridge_lambda})."
        ) from error

    pivots = np.abs(np.diag(factor[0]))
    if pivots.min() <= _PIVOT_TOLERANCE * max(pivots.max(), 1.0):
        raise SingularSystemError(
            f"Singular normal equations (lambda={ridge_lambda})."
        )

    coefficients = linalg.cho_solve(factor, moment)
    intercept = targets_mean - design_mean @ coefficients
    if np.ndim(intercept) == 0:
        intercept = float(intercept)
    return coefficients, intercept
