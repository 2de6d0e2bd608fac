"""A generic step of the explanation pipeline."""

import abc
import logging
from typing import Generic, TypeVar

from disentangled_explainer.actions.acceptance_check import AcceptanceCheck

# Define a generic type variable
T = TypeVar("T", bound=object)


class AcceptanceError(Exception):
    """An action ran, but its result failed some acceptance checks."""

    def __init__(self, action_name: str, failed_checks: list[AcceptanceCheck]):
        self.action_name = action_name
        self.failed_checks = failed_checks
        super().__init__(
            f"{action_name} failed {len(failed_checks)} acceptance "
            "check(s):\n" + "\n".join(f"- {check}" for check in failed_checks)
        )


class PipelineAction(abc.ABC, Generic[T]):
    """A generic step of the explanation pipeline.

    An action is made by:

    - the action itself, which is the procedure that produces data,
      models, explanations or measures (and usually writes artifacts);
    - a set of acceptance checks, evaluated on the outcome of the action,
      which define a successful completion of the action;
    - a return type T, which is the type of the result of the action.

    This class is a template for such actions.

    **SUBCLASS AN ACTION**

    Create a subclass of ``PipelineAction`` and implement the abstract
    methods :py:meth:`_action` and :py:meth:`acceptance_criteria`. If the
    action has no acceptance check, return an empty list. Parameters
    go to the :py:meth:`__init__` method.

    .. code-block:: python

        class CountPoints(PipelineAction[int]):
            def __init__(self, points, minimum):
                super().__init__()
                self.points = points
                self.minimum = minimum

            def _action(self):
                return len(self.points)

            def acceptance_criteria(self):
                return [
                    ThresholdCheck(
                        "number of points",
                        self.get_last_execution_result,
                        minimum=self.minimum,
                    )
                ]

    **EXECUTE AN ACTION**

    Call :py:meth:`execute`. The method:

    - logs the start of the execution;
    - runs :py:meth:`_action` and stores its result;
    - evaluates the acceptance checks (unless disabled with
      :py:meth:`set_acceptance_policy`) and raises
      :py:class:`AcceptanceError` listing the failed ones;
    - logs the end of the execution and returns the result.

    The logging can be disabled with :py:meth:`set_logging_policy`.
    """

    def __init__(self) -> None:
        """Initialise the action with the default policies."""
        super().__init__()

        self.do_logging = True
        """Whether the action logs its execution."""

        self.check_acceptance = True
        """Whether the acceptance checks are evaluated."""

        self._last_execution_result: T | None = None
        self._logger = logging.getLogger(__name__)

    # ----------------------------------------------------------------
    # Policies and result

    def set_logging_policy(self, do_logging: bool) -> None:
        """Enable or disable the logging of the execution.

        :param do_logging: The new logging policy value.
        """
        self.do_logging = do_logging

    def set_acceptance_policy(self, check_acceptance: bool) -> None:
        """Enable or disable the acceptance checks.

        :param check_acceptance: The new acceptance policy value.
        """
        self.check_acceptance = check_acceptance

    def get_last_execution_result(self) -> T | None:
        """The result of the last execution (None before the first)."""
        return self._last_execution_result

    # ----------------------------------------------------------------
    # Execution

    def execute(self) -> T:
        """Execute the action and evaluate its acceptance checks.

        :return: The result of the action.
        :raises AcceptanceError: If some acceptance check fails (the
            result is still available through
            :py:meth:`get_last_execution_result`).
        """
        self._log(
            "Executing action "
            f"(acceptance checks: {'on' if self.check_acceptance else 'off'})"
        )

        self._last_execution_result = self._action()

        if self.check_acceptance:
            failed = [
                check
                for check in self.acceptance_criteria()
                if not check.is_satisfied()
            ]
            for check in failed:
                self._log(f"Acceptance check failed: {check}", log_error=True)
            if failed:
                raise AcceptanceError(self.__class__.__name__, failed)

        self._log("Action execution completed")
        return self._last_execution_result

    # ----------------------------------------------------------------
    # Extension points

    @abc.abstractmethod
    def _action(self) -> T:
        """The procedure of the action.

        :return: The result of the action (None if it has none).
        """

    @abc.abstractmethod
    def acceptance_criteria(self) -> list[AcceptanceCheck]:
        """The checks the outcome of the action must pass.

        They are requested *AFTER* the action is executed, so they can
        be built on :py:meth:`get_last_execution_result`.

        :return: A list of acceptance checks (possibly empty).
        """

    # ----------------------------------------------------------------
    # Action internal utilities

    def _log(self, message: str, log_error: bool = False) -> None:
        """Log a message prefixed with the name of the action class.

        Nothing is logged if :py:attr:`do_logging` is ``False``.

        :param message: The message to log.
        :param log_error: If True, the message is logged as an error.
        """
        if not self.do_logging:
            return

        if log_error:
            self._logger.error("%s: %s", self.__class__.__name__, message)
        else:
            self._logger.info("%s: %s", self.__class__.__name__, message)
