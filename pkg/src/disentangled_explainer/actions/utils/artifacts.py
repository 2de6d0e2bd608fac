"""Writing the artifacts of the actions.

JSON artifacts are deterministic: keys are sorted, the run configuration
is echoed under ``config`` and numpy values are converted to plain
Python numbers, so reruns with the same configuration are
byte-identical.
"""

import json
import logging
from pathlib import Path

import numpy as np

from disentangled_explainer.config.run_config import RunConfiguration

_logger = logging.getLogger(__name__)


def _to_json(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serialisable.")


def dump_json(payload: dict) -> str:
    """The canonical text of a JSON artifact."""
    return (
        json.dumps(payload, indent=2, sort_keys=True, default=_to_json) + "\n"
    )


def write_json_artifact(
    directory: str | Path,
    filename: str,
    payload: dict,
    config: RunConfiguration,
) -> Path:
    """Write a JSON artifact, echoing the run configuration.

    :param directory: The output directory (created if missing).
    :param filename: The file name.
    :param payload: The content (the ``config`` key is reserved).
    :param config: The run configuration.
    :return: The written path.
    :raises OSError: If the file can't be written.
    """
    if "config" in payload:
        raise ValueError("The 'config' key of an artifact is reserved.")
    path = Path(directory) / filename
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        dump_json({**payload, "config": config.to_dict()}), encoding="utf-8"
    )
    _logger.info("Artifact written: %s", path)
    return path


def write_text_artifact(
    directory: str | Path, filename: str, text: str
) -> Path:
    """Write a plain text artifact (a rendered report)."""
    path = Path(directory) / filename
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text.rstrip("\n") + "\n", encoding="utf-8")
    _logger.info("Artifact written: %s", path)
    return path
