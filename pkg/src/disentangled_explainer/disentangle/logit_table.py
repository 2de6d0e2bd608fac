"""The N × N × C cache of model outputs over a sample set.

Entry ``[i, j]`` of the table is ``M(x1_i, x2_j)``: the first modality of
point i paired with the second modality of point j. Row sums, column
sums and the grand sum are accumulated in a fixed index order, so that
the incremental updates of :mod:`.decomposition` reproduce them bit for
bit.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import msgpack
import msgpack_numpy
import numpy as np

from disentangled_explainer.disentangle.sample_set import SampleSet
from disentangled_explainer.models.black_box_model import BlackBoxModel

TABLE_FILE_FORMAT = "logit-table"
TABLE_FILE_VERSION = 1
MEANS_TOLERANCE = 1e-12

_logger = logging.getLogger(__name__)


def ordered_sum(values: np.ndarray, axis: int) -> np.ndarray:
    """Sum along an axis strictly from the first to the last index.

    The result doesn't depend on memory layout, so a row and a column
    holding the same values sum to the same bits.
    """
    values = np.moveaxis(np.asarray(values), axis, 0)
    total = np.zeros(values.shape[1:])
    for item in values:
        total = total + item
    return total


class LogitTable:
    """An immutable N × N × C logit table with its cached sums."""

    def __init__(
        self, logits: np.ndarray, identifiers: tuple[str, ...] | None = None
    ) -> None:
        """Wrap a logit array and cache its sums.

        :param logits: The N × N × C array (copied).
        :param identifiers: The sample identifiers (default: positions).
        """
        logits = np.array(logits, dtype=np.float64)
        if logits.ndim != 3 or logits.shape[0] != logits.shape[1]:
            raise ValueError(
                f"A logit table is N × N × C, got shape {logits.shape}."
            )
        if logits.shape[0] < 2 or logits.shape[2] < 1:
            raise ValueError("A logit table needs N >= 2 and C >= 1.")
        if identifiers is None:
            identifiers = tuple(str(i) for i in range(logits.shape[0]))
        if len(identifiers) != logits.shape[0]:
            raise ValueError("There must be one identifier per sample.")

        self.logits = logits
        self.identifiers = tuple(identifiers)

        self.row_sums = ordered_sum(logits, axis=1)
        """N × C, ``row_sums[i] = sum_j L[i, j]``."""

        self.col_sums = ordered_sum(logits, axis=0)
        """N × C, ``col_sums[j] = sum_i L[i, j]``."""

        self.grand_sum = ordered_sum(self.row_sums, axis=0)
        """C-vector, the sum of the row sums."""

        for array in (self.logits, self.row_sums, self.col_sums):
            array.setflags(write=False)
        self.grand_sum.setflags(write=False)

    @property
    def n(self) -> int:
        return self.logits.shape[0]

    @property
    def num_classes(self) -> int:
        return self.logits.shape[2]

    @property
    def row_means(self) -> np.ndarray:
        """N × C, mean over the second modality: ``E_x2 M(x1_i, x2)``."""
        return self.row_sums / self.n

    @property
    def col_means(self) -> np.ndarray:
        """N × C, mean over the first modality: ``E_x1 M(x1, x2_j)``."""
        return self.col_sums / self.n

    @property
    def grand_mean(self) -> np.ndarray:
        """C-vector, mean over both modalities."""
        return self.grand_sum / (self.n * self.n)

    def predicted_class(self, k: int) -> int:
        """The class the model predicts for sample k (its argmax)."""
        return int(np.argmax(self.logits[k, k]))

    # ------------------------------------------------------------------
    # Persistence

    def save(self, path: str | Path) -> None:
        """Write the table (with identifiers and means) to a msgpack
        file."""
        content = {
            "format": TABLE_FILE_FORMAT,
            "version": TABLE_FILE_VERSION,
            "n": self.n,
            "classes": self.num_classes,
            "identifiers": list(self.identifiers),
            "logits": np.ascontiguousarray(self.logits),
            "row_means": self.row_means,
            "col_means": self.col_means,
            "grand_mean": self.grand_mean,
        }
        Path(path).write_bytes(
            msgpack.packb(content, default=msgpack_numpy.encode)
        )
        _logger.info(
            "Logit table (N=%d, C=%d) written to %s",
            self.n,
            self.num_classes,
            path,
        )

    @classmethod
    def load(cls, path: str | Path) -> "LogitTable":
        """Read a table written by :meth:`save`.

        The sums are recomputed from the logits and checked against the
        stored means.

        :raises ValueError: If the file is not a logit table or its
            means don't match its logits.
        """
        content = msgpack.unpackb(
            Path(path).read_bytes(),
            object_hook=msgpack_numpy.decode,
            raw=False,
        )
        if (
            not isinstance(content, dict)
            or content.get("format") != TABLE_FILE_FORMAT
        ):
            raise ValueError(f"{path} is not a logit table file.")

        table = cls(np.array(content["logits"]), tuple(content["identifiers"]))
        if (table.n, table.num_classes) != (content["n"], content["classes"]):
            raise ValueError(f"{path}: header does not match the logits.")
        for name in ("row_means", "col_means", "grand_mean"):
            stored = np.array(content[name])
            if not np.allclose(
                stored, getattr(table, name), rtol=0, atol=MEANS_TOLERANCE
            ):
                raise ValueError(f"{path}: stored {name} don't match.")
        return table


def build_logit_table(
    model: BlackBoxModel, samples: SampleSet, workers: int = 1
) -> LogitTable:
    """Evaluate the model on all the N² cross pairings of a sample set.

    Exactly N² model evaluations are issued. With several workers, rows
    are evaluated concurrently, each in its own batch; results land in
    their row slot and sums are reduced afterwards, in index order.

    :param model: The model.
    :param samples: The sample set.
    :param workers: Number of rows evaluated concurrently.
    :raises GatewayError: If the model fails.
    """
    firsts, seconds = samples.values(1), samples.values(2)

    def row_pairs(i: int) -> list:
        return [(firsts[i], x2) for x2 in seconds]

    if workers <= 1:
        pairs = [pair for i in range(samples.n) for pair in row_pairs(i)]
        flat = model.evaluate_batch(pairs)
        logits = flat.reshape(samples.n, samples.n, model.num_classes)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(
                executor.map(
                    lambda i: model.evaluate_batch(row_pairs(i)),
                    range(samples.n),
                )
            )
        logits = np.stack(rows)

    _logger.debug(
        "Built logit table N=%d C=%d (%d evaluations)",
        samples.n,
        model.num_classes,
        samples.n**2,
    )
    return LogitTable(logits, samples.identifiers)
