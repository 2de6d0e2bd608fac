"""Interpretable features of a modality value and how to mask them."""

from dataclasses import dataclass

import numpy as np

from disentangled_explainer.models.modality_value import (
    ModalityKind,
    ModalityValue,
)


class EmptyInputError(ValueError):
    """The value has no interpretable feature (e.g., an empty text)."""


@dataclass(frozen=True)
class FeatureSpace:
    """The decomposition of a value into F interpretable features.

    - dense: one feature per dimension;
    - tokens: one feature per token;
    - grid: one feature per cell of a uniform grid, numbered row-major.
    """

    kind: ModalityKind
    descriptors: tuple[str, ...]
    """One unique, human readable label per feature."""

    row_bounds: tuple[int, ...] = ()
    """Grid only: raster row where each grid row starts, plus the end."""

    col_bounds: tuple[int, ...] = ()
    """Grid only: raster column where each grid column starts, plus the
    end."""

    @property
    def feature_count(self) -> int:
        return len(self.descriptors)

    def apply_mask(self, value: ModalityValue, mask) -> ModalityValue:
        """The value with the features where ``mask`` is 0 masked out.

        Masked dense dimensions are set to 0, masked tokens are removed
        and masked grid cells are zeroed.
        """
        mask = np.asarray(mask)
        if mask.shape != (self.feature_count,):
            raise ValueError(
                f"Expected a mask of {self.feature_count} features."
            )
        if value.kind is not self.kind:
            raise ValueError("The value does not match the feature space.")

        if self.kind is ModalityKind.DENSE:
            return value.replace_payload(np.where(mask > 0, value.payload, 0))
        if self.kind is ModalityKind.TOKENS:
            return value.replace_payload(
                tuple(t for t, keep in zip(value.payload, mask) if keep)
            )

        raster = np.array(value.payload)
        n_cols = len(self.col_bounds) - 1
        for feature in np.flatnonzero(mask == 0):
            row, col = divmod(int(feature), n_cols)
            raster[
                self.row_bounds[row] : self.row_bounds[row + 1],
                self.col_bounds[col] : self.col_bounds[col + 1],
            ] = 0.0
        return value.replace_payload(raster)


def _grid_bounds(size: int, parts: int) -> tuple[int, ...]:
    chunks = np.array_split(np.arange(size), parts)
    return tuple(int(c[0]) for c in chunks) + (size,)


def segment(
    value: ModalityValue,
    grid_rows: int | None = None,
    grid_cols: int | None = None,
) -> FeatureSpace:
    """Split a value into interpretable features.

    :param value: The value.
    :param grid_rows: Grid values only: segmentation rows (default:
        the value's own grid).
    :param grid_cols: Grid values only: segmentation columns.
    :raises EmptyInputError: If the value has no feature.
    :raises ValueError: If grid parameters are given for a value that
        is not a grid, or the grid doesn't fit the raster.
    """
    if value.kind is not ModalityKind.GRID and (
        grid_rows is not None or grid_cols is not None
    ):
        raise ValueError("Grid parameters apply to grid values only.")

    if value.kind is ModalityKind.DENSE:
        return FeatureSpace(
            value.kind, tuple(f"dim[{i}]" for i in range(value.feature_count))
        )

    if value.kind is ModalityKind.TOKENS:
        if not value.payload:
            raise EmptyInputError("Can't explain an empty token sequence.")
        return FeatureSpace(
            value.kind,
            tuple(f"{token}@{i}" for i, token in enumerate(value.payload)),
        )

    rows = grid_rows if grid_rows is not None else value.grid_shape[0]
    cols = grid_cols if grid_cols is not None else value.grid_shape[1]
    height, width = value.payload.shape
    if not (1 <= rows <= height and 1 <= cols <= width):
        raise ValueError(
            f"A {rows}×{cols} grid does not fit a {height}×{width} raster."
        )
    return FeatureSpace(
        value.kind,
        tuple(f"cell[{r},{c}]" for r in range(rows) for c in range(cols)),
        _grid_bounds(height, rows),
        _grid_bounds(width, cols),
    )
