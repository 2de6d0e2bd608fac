"""A wrapper to all the configurations of a run."""

from dataclasses import dataclass, field
from enum import Enum

from disentangled_explainer.config.components_config import (
    DisentangleConfiguration,
    ModelSourceConfiguration,
    SectionConfiguration,
    SurrogateConfiguration,
    TrainingConfiguration,
    ValidationConfiguration,
)


@dataclass
class RunConfiguration:
    """Everything a command needs to run, besides its own arguments.

    Each field is the configuration of a different component. A support
    enum lists the section names, to access the sections in a parametric
    way (the YAML file uses the same names).

    ``to_dict`` output is echoed into every artifact a command writes.
    """

    class SectionName(Enum):
        """The names of the configuration sections."""

        DISENTANGLE = "disentangle"
        SURROGATE = "surrogate"
        MODEL = "model"
        TRAINING = "training"
        VALIDATION = "validation"

    seed: int = 0
    """The root seed every other seed is derived from."""

    workers: int = 1
    """Worker threads used by the parallel steps."""

    out: str = "out"
    """Directory where the artifacts are written."""

    data_dir: str = "data"
    """Directory of the synthetic dataset splits."""

    disentangle: DisentangleConfiguration = field(
        default_factory=DisentangleConfiguration
    )
    surrogate: SurrogateConfiguration = field(
        default_factory=SurrogateConfiguration
    )
    model: ModelSourceConfiguration = field(
        default_factory=ModelSourceConfiguration
    )
    training: TrainingConfiguration = field(
        default_factory=TrainingConfiguration
    )
    validation: ValidationConfiguration = field(
        default_factory=ValidationConfiguration
    )

    def get_sections(self) -> list[SectionConfiguration]:
        """All the configuration sections."""
        return [self.get_section(name) for name in self.SectionName]

    def get_section(self, section_name: SectionName) -> SectionConfiguration:
        """Get a section by name."""
        return getattr(self, section_name.value)

    def to_dict(self) -> dict:
        """The whole configuration as a JSON-ready dictionary."""
        return {
            "seed": self.seed,
            "workers": self.workers,
            "out": self.out,
            "data_dir": self.data_dir,
            **{
                name.value: self.get_section(name).to_dict()
                for name in self.SectionName
            },
        }
