"""One modality input of a two-modality model.

A :class:`ModalityValue` is one of:

- a dense real vector (one interpretable feature per dimension);
- a token sequence (one feature per token);
- a raster (a 2D array of real cells) segmented by a uniform grid
  (one feature per grid cell).

Values are immutable and compare by content, so they can be duplicated
freely in batches and used to recognise no-op perturbations.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np


class ModalityKind(Enum):
    """The kinds of modality values a model can accept."""

    DENSE = "dense"
    TOKENS = "tokens"
    GRID = "grid"


@dataclass(frozen=True, eq=False)
class ModalityValue:
    """An immutable modality input.

    Use the :meth:`dense`, :meth:`tokens` and :meth:`grid` constructors
    instead of building instances directly.
    """

    kind: ModalityKind
    """The kind of the value."""

    payload: np.ndarray | tuple[str, ...]
    """A float vector (dense), a tuple of tokens (tokens) or a float
    matrix (grid)."""

    grid_shape: tuple[int, int] | None = None
    """For grid values, the number of segmentation rows and columns."""

    # ------------------------------------------------------------------
    # Constructors

    @classmethod
    def dense(cls, values) -> "ModalityValue":
        """A dense real vector."""
        array = np.array(values, dtype=np.float64)
        if array.ndim != 1 or array.size == 0:
            raise ValueError("A dense value must be a nonempty vector.")
        array.setflags(write=False)
        return cls(ModalityKind.DENSE, array)

    @classmethod
    def tokens(
        cls, tokens: str | list[str] | tuple[str, ...]
    ) -> "ModalityValue":
        """A token sequence (a string is split on whitespace).

        An empty sequence is allowed: it is what remains of a text when
        every token is masked out.
        """
        if isinstance(tokens, str):
            tokens = tokens.split()
        return cls(ModalityKind.TOKENS, tuple(str(t) for t in tokens))

    @classmethod
    def grid(
        cls, raster, grid_rows: int = 1, grid_cols: int = 1
    ) -> "ModalityValue":
        """A raster segmented by a uniform ``grid_rows × grid_cols`` grid.

        :param raster: A 2D array of real cells.
        :param grid_rows: Number of segmentation rows (at most the
            raster rows).
        :param grid_cols: Number of segmentation columns (at most the
            raster columns).
        """
        array = np.array(raster, dtype=np.float64)
        if array.ndim != 2 or array.size == 0:
            raise ValueError("A grid value must be a nonempty 2D array.")
        if not (
            1 <= grid_rows <= array.shape[0]
            and 1 <= grid_cols <= array.shape[1]
        ):
            raise ValueError(
                f"A {grid_rows}×{grid_cols} grid does not fit a "
                f"{array.shape[0]}×{array.shape[1]} raster."
            )
        array.setflags(write=False)
        return cls(ModalityKind.GRID, array, (int(grid_rows), int(grid_cols)))

    # ------------------------------------------------------------------
    # Properties

    @property
    def feature_count(self) -> int:
        """Number of interpretable features of the value."""
        if self.kind is ModalityKind.GRID:
            return self.grid_shape[0] * self.grid_shape[1]
        return len(self.payload)

    def replace_payload(self, payload) -> "ModalityValue":
        """A value of the same kind (and grid) with a new payload."""
        if self.kind is ModalityKind.DENSE:
            return ModalityValue.dense(payload)
        if self.kind is ModalityKind.TOKENS:
            return ModalityValue.tokens(tuple(payload))
        return ModalityValue.grid(payload, *self.grid_shape)

    # ------------------------------------------------------------------
    # Wire encoding

    def to_wire(self) -> list | dict:
        """Encode the value for the external model protocol.

        - dense: ``[reals]``
        - tokens: ``["w1", "w2", ...]``
        - grid: ``{"rows": R, "cols": C, "cells": [R*C reals, row-major],
          "grid": [grid rows, grid cols]}``
        """
        if self.kind is ModalityKind.DENSE:
            return self.payload.tolist()
        if self.kind is ModalityKind.TOKENS:
            return list(self.payload)
        return {
            "rows": int(self.payload.shape[0]),
            "cols": int(self.payload.shape[1]),
            "cells": self.payload.ravel().tolist(),
            "grid": list(self.grid_shape),
        }

    @classmethod
    def from_wire(cls, kind: ModalityKind, data) -> "ModalityValue":
        """Decode a value of a given kind from its wire encoding.

        A grid encoding without ``grid`` is segmented as a single cell.
        """
        if kind is ModalityKind.DENSE:
            return cls.dense(data)
        if kind is ModalityKind.TOKENS:
            return cls.tokens(list(data))
        raster = np.array(data["cells"], dtype=np.float64).reshape(
            data["rows"], data["cols"]
        )
        return cls.grid(raster, *data.get("grid", (1, 1)))

    # ------------------------------------------------------------------
    # Content equality

    def _payload_key(self) -> tuple:
        if self.kind is ModalityKind.TOKENS:
            return self.payload
        return self.payload.shape, self.payload.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModalityValue):
            return NotImplemented
        return (
            self.kind is other.kind
            and self.grid_shape == other.grid_shape
            and self._payload_key() == other._payload_key()
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.grid_shape, self._payload_key()))

    def __repr__(self) -> str:
        if self.kind is ModalityKind.TOKENS:
            return f"ModalityValue.tokens({' '.join(self.payload)!r})"
        return (
            f"ModalityValue.{self.kind.value}"
            f"(shape={self.payload.shape}, features={self.feature_count})"
        )


ModalityPair = tuple[ModalityValue, ModalityValue]
"""An input of a two-modality model."""
