"""Models served by an external process over a line-delimited protocol.

The process reads requests on its stdin and writes responses on its
stdout, one JSON document per line:

- handshake (first line the process writes)::

    {"protocol": 1, "classes": C,
     "modalities": [{"kind": "dense"}, {"kind": "tokens"}]}

- request::

    {"id": k, "pairs": [[x1, x2], ...]}

- response::

    {"id": k, "logits": [[C reals], ...]}

Modality values use the encodings of :meth:`ModalityValue.to_wire`.
Response ids must match the request ids; a response for another request
is a protocol error. A session serves one request at a time.
"""

import json
import logging
import queue
import shlex
import subprocess
import threading
from typing import Sequence

import numpy as np

from disentangled_explainer.models.black_box_model import (
    BlackBoxModel,
    GatewayError,
)
from disentangled_explainer.models.modality_value import (
    ModalityKind,
    ModalityPair,
)

PROTOCOL_VERSION = 1

_logger = logging.getLogger(__name__)

_EOF = None


class HandshakeTimeoutError(GatewayError):
    """The model process did not send its handshake in time."""


class SchemaMismatchError(GatewayError):
    """A message is well formed but does not match what was expected
    (e.g., wrong number of logits, unknown modality kind)."""


class ProtocolError(GatewayError):
    """A message is not valid JSON or breaks the request/response order."""


class SessionDeadError(GatewayError):
    """The session failed earlier and can't be used anymore."""


class ExternalModelSession(BlackBoxModel):
    """A black-box model served by a subprocess.

    The process is started by the constructor, which also waits for the
    handshake. Close the session with :meth:`close` (or use it as a
    context manager) to terminate the process.

    When the process crashes, exits or doesn't answer in time, the
    session is marked dead and its process is killed: the current call
    raises a :class:`GatewayError` carrying the index of the failing
    batch, and every later call fails fast with :class:`SessionDeadError`.
    """

    def __init__(
        self,
        command: str | list[str],
        handshake_timeout: float = 10.0,
        request_timeout: float = 60.0,
        batch_size: int = 4096,
    ) -> None:
        """Start the process and exchange the handshake.

        :param command: The command line (a string is split with shell
            syntax rules, but no shell is involved).
        :param handshake_timeout: Seconds to wait for the handshake.
        :param request_timeout: Seconds to wait for each response.
        :param batch_size: Maximum number of pairs per request; bigger
            batches are sent in several requests.
        :raises OSError: If the process can't be started.
        :raises HandshakeTimeoutError: If the handshake doesn't arrive
            in time.
        :raises SchemaMismatchError: If the handshake is not supported.
        :raises ProtocolError: If the handshake is not valid JSON.
        """
        if isinstance(command, str):
            command = shlex.split(command)
        if not command:
            raise ValueError("The model command is empty.")
        if batch_size < 1:
            raise ValueError("The batch size must be positive.")

        self.command = list(command)
        self.request_timeout = request_timeout
        self.batch_size = batch_size

        self.dead = False
        """True after a failure: the session can't be used anymore."""

        self._next_id = 0
        self._lock = threading.Lock()
        self._lines: queue.Queue = queue.Queue()

        self._process = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )
        self._reader = threading.Thread(
            target=self._read_stdout, name="model-stdout", daemon=True
        )
        self._reader.start()
        _logger.info(
            "Started model process %d: %s",
            self._process.pid,
            shlex.join(self.command),
        )

        try:
            self._num_classes, self.modality_kinds = self._handshake(
                handshake_timeout
            )
        except GatewayError:
            self.close()
            raise

    # ------------------------------------------------------------------
    # Process I/O

    def _read_stdout(self) -> None:
        try:
            for line in self._process.stdout:
                self._lines.put(line)
        finally:
            self._lines.put(_EOF)

    def _receive(self, timeout: float, batch_index: int | None) -> str:
        try:
            line = self._lines.get(timeout=timeout)
        except queue.Empty as error:
            if batch_index is None:
                raise HandshakeTimeoutError(
                    f"No handshake from the model process in {timeout}s."
                ) from error
            raise GatewayError(
                f"The model process did not answer in {timeout}s.",
                batch_index,
            ) from error
        if line is _EOF:
            raise GatewayError(
                "The model process exited "
                f"(exit code {self._process.poll()}).",
                batch_index,
            )
        return line

    def _send(self, message: dict, batch_index: int) -> None:
        try:
            self._process.stdin.write(json.dumps(message) + "\n")
            self._process.stdin.flush()
        except OSError as error:
            raise GatewayError(
                f"Could not write to the model process: {error}",
                batch_index,
            ) from error

    def _decode(self, line: str, batch_index: int | None) -> dict:
        try:
            message = json.loads(line)
        except json.JSONDecodeError as error:
            raise ProtocolError(
                f"The model process wrote invalid JSON: {line.strip()!r}",
                batch_index,
            ) from error
        if not isinstance(message, dict):
            raise ProtocolError(
                f"Expected a JSON object, got {line.strip()!r}", batch_index
            )
        return message

    # ------------------------------------------------------------------
    # Protocol

    def _handshake(
        self, timeout: float
    ) -> tuple[int, tuple[ModalityKind, ModalityKind]]:
        handshake = self._decode(self._receive(timeout, None), None)

        if handshake.get("protocol") != PROTOCOL_VERSION:
            raise SchemaMismatchError(
                f"Unsupported protocol {handshake.get('protocol')!r} "
                f"(expected {PROTOCOL_VERSION})."
            )
        classes = handshake.get("classes")
        if not isinstance(classes, int) or classes < 1:
            raise SchemaMismatchError(f"Invalid class count {classes!r}.")
        modalities = handshake.get("modalities")
        if not isinstance(modalities, list) or len(modalities) != 2:
            raise SchemaMismatchError("The model must declare 2 modalities.")
        try:
            kinds = tuple(ModalityKind(m["kind"]) for m in modalities)
        except (KeyError, TypeError, ValueError) as error:
            raise SchemaMismatchError(
                f"Unknown modality declaration {modalities!r}."
            ) from error

        _logger.info(
            "Model process %d handshake: %d classes, modalities %s",
            self._process.pid,
            classes,
            [kind.value for kind in kinds],
        )
        return classes, kinds

    def _request(
        self, pairs: Sequence[ModalityPair], batch_index: int
    ) -> np.ndarray:
        request_id = self._next_id
        self._next_id += 1
        self._send(
            {
                "id": request_id,
                "pairs": [[x1.to_wire(), x2.to_wire()] for x1, x2 in pairs],
            },
            batch_index,
        )
        response = self._decode(
            self._receive(self.request_timeout, batch_index), batch_index
        )

        if response.get("id") != request_id:
            raise ProtocolError(
                f"Response id {response.get('id')!r} does not match "
                f"request id {request_id}.",
                batch_index,
            )
        logits = response.get("logits")
        if not isinstance(logits, list) or len(logits) != len(pairs):
            raise SchemaMismatchError(
                f"Expected {len(pairs)} logit vectors in the response.",
                batch_index,
            )
        try:
            array = np.array(logits, dtype=np.float64)
        except (TypeError, ValueError) as error:
            raise SchemaMismatchError(
                "The response logits are not a matrix of reals.", batch_index
            ) from error
        if array.shape != (len(pairs), self._num_classes):
            raise SchemaMismatchError(
                f"Expected {self._num_classes} logits per pair, got an "
                f"array of shape {array.shape}.",
                batch_index,
            )
        return array

    # ------------------------------------------------------------------
    # BlackBoxModel

    @property
    def num_classes(self) -> int:
        return self._num_classes

    @property
    def running(self) -> bool:
        """True while the model process has not exited."""
        return self._process.poll() is None

    def _evaluate_batch(self, pairs: Sequence[ModalityPair]) -> np.ndarray:
        with self._lock:
            if self.dead:
                raise SessionDeadError(
                    "The model session failed earlier and is closed."
                )
            try:
                chunks = [
                    self._request(
                        pairs[start : start + self.batch_size], index
                    )
                    for index, start in enumerate(
                        range(0, len(pairs), self.batch_size)
                    )
                ]
            except GatewayError:
                self._mark_dead()
                raise
        return np.concatenate(chunks)

    # ------------------------------------------------------------------
    # Lifecycle

    def _mark_dead(self) -> None:
        self.dead = True
        if self._process.poll() is None:
            _logger.warning(
                "Killing model process %d after a failed request.",
                self._process.pid,
            )
            self._process.kill()
            self._process.wait()

    def close(self, timeout: float = 5.0) -> None:
        """Terminate the model process (idempotent)."""
        self.dead = True
        try:
            self._process.stdin.close()
        except OSError:
            pass
        if self._process.poll() is None:
            try:
                self._process.wait(timeout=timeout)
            except subprocess.TimeoutExpired:
                _logger.warning(
                    "Model process %d did not exit, killing it.",
                    self._process.pid,
                )
                self._process.kill()
                self._process.wait()
        _logger.debug(
            "Model process %d closed (exit code %s)",
            self._process.pid,
            self._process.returncode,
        )

    def __enter__(self) -> "ExternalModelSession":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def external_model_session(
    command: str | list[str], handshake_timeout: float = 10.0, **kwargs
) -> ExternalModelSession:
    """Start an external model and return its session.

    :param command: The command line of the model process.
    :param handshake_timeout: Seconds to wait for the handshake.
    :param kwargs: Further :class:`ExternalModelSession` options.
    """
    return ExternalModelSession(
        command, handshake_timeout=handshake_timeout, **kwargs
    )
