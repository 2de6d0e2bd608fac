"""A sequence of `PipelineAction`s, executed in order."""

from typing import Generic, TypeVar

from disentangled_explainer.actions.pipeline_action import PipelineAction

# Define a generic type variable
T = TypeVar("T", bound=object)


class PipelineActionSequence(PipelineAction[T], Generic[T]):
    """A sequence of `PipelineAction`, executed in order.

    Each step evaluates its own acceptance checks, so the sequence stops
    at the first step that fails them. The sequence has no further
    checks of its own and returns the result of the last step.

    Usage example:

    .. code-block:: python

        sequence = PipelineActionSequence([generate, train, validate])
        table = sequence.execute()

        # (you can always access the steps and set policies)
        sequence.steps[0].set_logging_policy(False)

    """

    def __init__(self, steps: list[PipelineAction]) -> None:
        """Initialise the action with the steps.

        :param steps: The sub-actions to be executed (at least one).
        """
        super().__init__()
        if not steps:
            raise ValueError("A sequence needs at least one step.")
        self.steps = steps

    def _action(self) -> T:
        """Execute the steps in order.

        :return: The result of the last step.
        """
        for step in self.steps[:-1]:
            step.execute()

        return self.steps[-1].execute()

    def acceptance_criteria(self):
        """The sequence by itself has no acceptance check.

        :return: An empty list.
        """
        return []

    def set_logging_policy(self, do_logging: bool) -> None:
        """Propagate a new logging policy to each of the steps."""
        for step in self.steps:
            step.set_logging_policy(do_logging)
        super().set_logging_policy(do_logging)

    def set_acceptance_policy(self, check_acceptance: bool) -> None:
        """Propagate a new acceptance policy to each of the steps."""
        for step in self.steps:
            step.set_acceptance_policy(check_acceptance)
        super().set_acceptance_policy(check_acceptance)
