"""Line-delimited persistence of the synthetic dataset.

A dataset directory contains one file per split (``train.jsonl``,
``valid.jsonl``, ``test.jsonl``) and a ``manifest.json``. Each split file
starts with a header line recording the seed, the generator version and
the run configuration, followed by one record per point:

.. code-block:: json

    {"d1": [0.12, ...], "d2": [-1.3, ...], "label": 1}

Floats are written with their shortest round-trip representation, so a
reloaded dataset is bit-identical to the generated one and two writes of
the same dataset are byte-identical.
"""

import json
import logging
from pathlib import Path

from disentangled_explainer.data.synthetic_dataset import (
    DatasetSplits,
    SyntheticPoint,
)

GENERATOR_VERSION = 1
"""Version of the generation procedure, recorded in every split file."""

MANIFEST_FILENAME = "manifest.json"

_logger = logging.getLogger(__name__)


def _split_path(directory: Path, split_name: str) -> Path:
    return directory / f"{split_name}.jsonl"


def write_splits(
    splits: DatasetSplits,
    directory: str | Path,
    seed: int,
    config: dict | None = None,
) -> list[Path]:
    """Write the three split files and the manifest.

    :param splits: The dataset to write.
    :param directory: The output directory (created if missing).
    :param seed: The seed the dataset was generated with.
    :param config: The run configuration, echoed under ``config`` in the
        split headers and the manifest. Defaults to just the seed.
    :return: The paths of the written files.
    :raises OSError: If the directory or the files can't be written.
    """
    directory = Path(directory)
    if config is None:
        config = {"seed": seed}
    directory.mkdir(parents=True, exist_ok=True)

    written = []
    for split_name in DatasetSplits.SPLIT_NAMES:
        path = _split_path(directory, split_name)
        points = splits.get_split(split_name)
        header = {
            "generator_version": GENERATOR_VERSION,
            "seed": seed,
            "split": split_name,
            "config": config,
        }
        with open(path, "w", encoding="utf-8") as stream:
            stream.write(json.dumps({"header": header}) + "\n")
            for point in points:
                record = {
                    "d1": point.d1.tolist(),
                    "d2": point.d2.tolist(),
                    "label": point.label,
                }
                stream.write(json.dumps(record) + "\n")
        written.append(path)

    manifest = {
        "generator_version": GENERATOR_VERSION,
        "seed": seed,
        "config": config,
        "sizes": {
            name: len(splits.get_split(name))
            for name in DatasetSplits.SPLIT_NAMES
        },
    }
    manifest_path = directory / MANIFEST_FILENAME
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    written.append(manifest_path)

    _logger.info("Dataset written to %s (%s)", directory, manifest["sizes"])
    return written


def read_split(path: str | Path) -> tuple[dict, list[SyntheticPoint]]:
    """Read one split file.

    :param path: The split file.
    :return: The header and the points.
    :raises FileNotFoundError: If the file doesn't exist.
    :raises ValueError: If the header is missing or a stored label
        disagrees with the one derived from the vectors.
    """
    with open(path, "r", encoding="utf-8") as stream:
        first_line = stream.readline()
        header = json.loads(first_line).get("header") if first_line else None
        if header is None:
            raise ValueError(f"{path} has no header line.")

        points = []
        for line_number, line in enumerate(stream, start=2):
            if not line.strip():
                continue
            record = json.loads(line)
            point = SyntheticPoint.from_vectors(record["d1"], record["d2"])
            if point.label != record["label"]:
                raise ValueError(
                    f"{path}:{line_number}: stored label {record['label']} "
                    f"does not match the score {point.score}."
                )
            points.append(point)
    return header, points


def read_splits(directory: str | Path) -> DatasetSplits:
    """Read the three split files of a dataset directory.

    :raises FileNotFoundError: If a split file is missing.
    """
    directory = Path(directory)
    splits = DatasetSplits()
    for split_name in DatasetSplits.SPLIT_NAMES:
        _, points = read_split(_split_path(directory, split_name))
        setattr(splits, split_name, points)
    _logger.info("Dataset read from %s (%d points)", directory, len(splits))
    return splits
