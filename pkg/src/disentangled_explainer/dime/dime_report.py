"""The disentangled explanations of one point."""

from dataclasses import dataclass, field

from disentangled_explainer.disentangle.decomposition import (
    DecomposedLogits,
)
from disentangled_explainer.surrogate.explanation import (
    Explanation,
    ExplanationKind,
)

LOW_FIT_R2 = 0.1
"""Plain surrogates fitting worse than this are flagged in reports."""


@dataclass(frozen=True)
class DimeReport:
    """Unimodal, interaction and plain explanations of a point.

    ``uc1``, ``mi1`` and ``lime1`` are fitted on the same perturbations of
    modality 1 (and the ``*2`` ones on those of modality 2), so per
    modality the plain weights are the sum of the other two.
    """

    # pylint: disable=too-many-instance-attributes

    point_index: int
    """Position k of the point in its sample set."""

    identifier: str
    """Identifier of the point (e.g., ``test:42``)."""

    class_index: int
    """The explained class."""

    predicted_class: int
    """The argmax of the point's logits."""

    logits: DecomposedLogits
    """Full, unimodal and interaction logits of the point (all classes)."""

    uc1: Explanation
    uc2: Explanation
    mi1: Explanation
    mi2: Explanation
    lime1: Explanation
    lime2: Explanation

    feature_labels: tuple[tuple[str, ...], tuple[str, ...]] = ((), ())
    """The feature descriptors of the two modalities."""

    provenance: dict = field(default_factory=dict)

    def get(self, kind: ExplanationKind, modality: int) -> Explanation:
        """The explanation of a sub-model for a modality."""
        name = {
            ExplanationKind.UC: "uc",
            ExplanationKind.MI: "mi",
            ExplanationKind.FULL: "lime",
        }[kind]
        if modality not in (1, 2):
            raise ValueError(f"The modality must be 1 or 2 (got {modality}).")
        return getattr(self, f"{name}{modality}")

    @property
    def explanations(self) -> dict[str, Explanation]:
        """The six explanations by name, in report order."""
        return {
            "uc1": self.uc1,
            "uc2": self.uc2,
            "mi1": self.mi1,
            "mi2": self.mi2,
            "lime1": self.lime1,
            "lime2": self.lime2,
        }

    @property
    def low_fit(self) -> bool:
        """True when a plain surrogate fits poorly."""
        return min(self.lime1.r2, self.lime2.r2) < LOW_FIT_R2

    def to_dict(self) -> dict:
        return {
            "point": self.point_index,
            "identifier": self.identifier,
            "class": self.class_index,
            "predicted_class": self.predicted_class,
            "logits": self.logits.to_dict(),
            "low_fit": self.low_fit,
            "feature_labels": [list(labels) for labels in self.feature_labels],
            "explanations": {
                name: explanation.to_dict()
                for name, explanation in self.explanations.items()
            },
            "provenance": dict(self.provenance),
        }
