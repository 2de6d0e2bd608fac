"""A condition an action result must satisfy to be accepted.

This module defines the checks evaluated after a
:py:class:`disentangled_explainer.actions.pipeline_action.PipelineAction`
is executed. There are provided two classes:

- a more generic
  :py:class:`disentangled_explainer.actions.acceptance_check.AcceptanceCheck`
  class, that allows you to define a custom predicate;
- a specific but very common case where a measured value must lie
  within bounds, represented by the
  :py:class:`disentangled_explainer.actions.acceptance_check.ThresholdCheck`.
"""  # pylint: disable=line-too-long # noqa E501

from dataclasses import dataclass
from typing import Callable


@dataclass
class AcceptanceCheck:
    """A named condition on the outcome of an action.

    The predicate is called without arguments after the action ran, so
    it usually reads the action result through a closure.
    """

    name: str
    """A short name of the check (e.g., ``test accuracy``)."""

    predicate: Callable[[], bool]
    """The condition that must hold."""

    def _condition_to_str(self) -> str:
        return f"to match the custom predicate {self.predicate}"

    def __str__(self) -> str:
        return f"Expected {self.name} {self._condition_to_str()}."

    def is_satisfied(self) -> bool:
        """Evaluate the check.

        :return: True if the condition holds, False otherwise.
        """
        return bool(self.predicate())


@dataclass
class ThresholdCheck(AcceptanceCheck):
    """A measured value that must lie within bounds.

    Either bound may be omitted. The predicate is automatically
    generated comparing the measure with the bounds (inclusive).
    """

    name: str
    measure: Callable[[], float]
    """Reads the measured value."""

    minimum: float | None = None
    maximum: float | None = None

    def __init__(
        self,
        name: str,
        measure: Callable[[], float],
        minimum: float | None = None,
        maximum: float | None = None,
    ) -> None:
        if minimum is None and maximum is None:
            raise ValueError(f"The check '{name}' has no bound.")
        self.measure = measure
        self.minimum = minimum
        self.maximum = maximum
        super().__init__(name=name, predicate=self._within_bounds)

    def _within_bounds(self) -> bool:
        value = self.measure()
        if self.minimum is not None and not value >= self.minimum:
            return False
        if self.maximum is not None and not value <= self.maximum:
            return False
        return True

    def _condition_to_str(self) -> str:
        if self.maximum is None:
            bounds = f"to be at least {self.minimum}"
        elif self.minimum is None:
            bounds = f"to be at most {self.maximum}"
        else:
            bounds = f"to be in [{self.minimum}, {self.maximum}]"
        return f"{bounds} (measured: {self.measure():.6g})"
