"""The sections of a run configuration.

Each section groups the knobs of one component (disentanglement,
surrogates, model source, training, validation). Every field has a
default, so a run can be configured with an empty file.
"""

import abc
from dataclasses import asdict, dataclass


@dataclass
class SectionConfiguration(abc.ABC):
    """A generic configuration section.

    To add a section:

    - extend this class,
    - add your parameters as attributes with a default value,
    - list in :meth:`positive_attributes` the numeric parameters that
      must be strictly positive.
    """

    @abc.abstractmethod
    def positive_attributes(self) -> list[str]:
        """Names of the attributes that must be strictly positive."""

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class DisentangleConfiguration(SectionConfiguration):
    """How the expectations are estimated."""

    n_samples: int = 32
    """Size N of the sample set the logit table is built on."""

    def positive_attributes(self) -> list[str]:
        return ["n_samples"]


@dataclass
class SurrogateConfiguration(SectionConfiguration):
    """How the local surrogates are fitted."""

    # pylint: disable=too-many-instance-attributes

    lime_samples: int = 1000
    """Number S of perturbations per modality."""

    keep_probability: float = 0.5
    """Probability that a perturbation keeps each feature."""

    kernel_width: float = 0.25
    ridge_lambda: float = 1e-3

    # Segmentation of grid (raster) values
    grid_rows: int = 4
    grid_cols: int = 4

    def positive_attributes(self) -> list[str]:
        return [
            "lime_samples",
            "keep_probability",
            "kernel_width",
            "grid_rows",
            "grid_cols",
        ]


@dataclass
class ModelSourceConfiguration(SectionConfiguration):
    """Where the model under explanation comes from.

    - ``builtin``: the reference MLP, read from (or trained into)
      ``model_path``;
    - ``cmd``: an external process started with ``command``.
    """

    BUILTIN = "builtin"
    COMMAND = "cmd"

    source: str = BUILTIN
    model_path: str | None = "model.msgpack"
    command: str | None = None

    # External process timeouts (seconds) and request size
    handshake_timeout: float = 10.0
    request_timeout: float = 60.0
    batch_size: int = 4096

    def positive_attributes(self) -> list[str]:
        return ["handshake_timeout", "request_timeout", "batch_size"]

    @property
    def is_builtin(self) -> bool:
        return self.source == self.BUILTIN


@dataclass
class TrainingConfiguration(SectionConfiguration):
    """How the reference MLP is trained."""

    epochs: int = 20
    batch_size: int = 64
    learning_rate: float = 0.01
    momentum: float = 0.9

    accuracy_floor: float = 0.95
    """Minimum test accuracy for the training to succeed."""

    def positive_attributes(self) -> list[str]:
        return ["epochs", "batch_size", "learning_rate"]


@dataclass
class ValidationConfiguration(SectionConfiguration):
    """The validation pipelines and their pass thresholds."""

    # pylint: disable=too-many-instance-attributes

    n_points: int = 200
    swap_pairs: int = 50
    explained_class: int = 1
    top_k: int = 5

    stability_seeds: int = 5
    """Number of seeds compared by the stability check."""

    # Correlation thresholds
    uc_min_correlation: float = 0.90
    mi_min_correlation: float = 0.80
    off_target_max_abs_correlation: float = 0.15
    lime_min_correlation: float = 0.40
    lime_max_correlation: float = 0.90

    # Swap test thresholds
    swap_uc_max_distance: float = 0.1
    swap_min_ratio: float = 3.0

    def positive_attributes(self) -> list[str]:
        return ["n_points", "swap_pairs", "top_k", "stability_seeds"]
