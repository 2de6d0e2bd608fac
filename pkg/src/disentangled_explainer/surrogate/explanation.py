"""Local linear explanations."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class ExplanationKind(Enum):
    """The sub-model an explanation describes."""

    UC = "UC"
    """Unimodal contributions."""

    MI = "MI"
    """Multimodal interactions."""

    FULL = "FULL"
    """The whole model (plain, undisentangled surrogate)."""


@dataclass(frozen=True)
class Explanation:
    """A surrogate fitted on one modality for one class of one
    sub-model.

    Weight f is the importance of feature f of the explained modality.
    """

    kind: ExplanationKind
    modality: int
    class_index: int
    weights: np.ndarray
    intercept: float
    r2: float
    provenance: dict = field(default_factory=dict)
    """How the explanation was produced (seeds, N, S, lambda...)."""

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=np.float64)
        if weights.ndim != 1 or not np.all(np.isfinite(weights)):
            raise ValueError("Weights must be a finite vector.")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @property
    def is_degenerate(self) -> bool:
        """True when every weight is zero."""
        return not np.any(self.weights)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "modality": self.modality,
            "class": self.class_index,
            "weights": self.weights.tolist(),
            "intercept": float(self.intercept),
            "r2": float(self.r2),
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Explanation":
        return cls(
            kind=ExplanationKind(data["kind"]),
            modality=int(data["modality"]),
            class_index=int(data["class"]),
            weights=np.array(data["weights"], dtype=np.float64),
            intercept=float(data["intercept"]),
            r2=float(data["r2"]),
            provenance=dict(data.get("provenance", {})),
        )
