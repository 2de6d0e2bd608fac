"""The ``disentangled-explainer`` command line.

Every command reads its configuration from the defaults, an optional
YAML file (``--config``) and the flags, in increasing precedence. The
exit status is 0 on success, 1 when a result fails its acceptance
checks, 2 on usage or configuration errors and 3 when the model fails.
"""

import argparse
import logging
import sys
from typing import Callable

import yaml
from ska_ser_logging import configure_logging

from disentangled_explainer import __version__
from disentangled_explainer.actions.benchmark import Benchmark
from disentangled_explainer.actions.explain_point import ExplainPoint
from disentangled_explainer.actions.generate_data import GenerateData
from disentangled_explainer.actions.measure_stability import (
    MeasureStability,
)
from disentangled_explainer.actions.pipeline_action import (
    AcceptanceError,
    PipelineAction,
)
from disentangled_explainer.actions.pipeline_action_sequence import (
    PipelineActionSequence,
)
from disentangled_explainer.actions.run_swap_test import RunSwapTest
from disentangled_explainer.actions.train_model import TrainModel
from disentangled_explainer.actions.validate_rq1 import ValidateRq1
from disentangled_explainer.init.experiment_builder import (
    Experiment,
    ExperimentBuilder,
)
from disentangled_explainer.models.black_box_model import (
    BlackBoxModel,
    GatewayError,
)
from disentangled_explainer.models.mlp_trainer import TrainingError

EXIT_OK = 0
EXIT_ACCEPTANCE = 1
EXIT_USAGE = 2
EXIT_MODEL = 3

DEFAULT_DATASET_SIZE = 100_000

_logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Parser


def _common_flags() -> argparse.ArgumentParser:
    """Flags shared by every command (all default to None: unset)."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("--seed", type=int, help="root seed")
    common.add_argument(
        "--n-samples", type=int, help="sample set size N of the logit table"
    )
    common.add_argument(
        "--lime-samples", type=int, help="perturbations S per modality"
    )
    common.add_argument(
        "--lambda",
        dest="ridge_lambda",
        type=float,
        help="ridge penalty of the surrogates",
    )
    common.add_argument("--kernel-width", type=float)
    common.add_argument(
        "--keep-prob", type=float, help="probability to keep a feature"
    )
    common.add_argument(
        "--model", help="'builtin' or 'cmd:<command line>' of a model process"
    )
    common.add_argument("--model-path", help="file of the builtin MLP")
    common.add_argument("--data-dir", help="directory of the dataset splits")
    common.add_argument("--workers", type=int, help="worker threads")
    common.add_argument("--out", help="directory of the artifacts")
    common.add_argument(
        "--progress", action="store_true", help="show progress bars"
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", help="log debug messages"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """The parser of the command line."""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="disentangled-explainer",
        description="Disentangled explanations of two-modality models.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def dataset_size(sub):
        sub.add_argument(
            "--n",
            type=int,
            default=DEFAULT_DATASET_SIZE,
            help="number of points to generate",
        )

    def training_flags(sub):
        sub.add_argument("--epochs", type=int)
        sub.add_argument("--accuracy-floor", type=float)

    sub = commands.add_parser(
        "gen-data", parents=[common], help="generate the synthetic dataset"
    )
    dataset_size(sub)

    sub = commands.add_parser(
        "train", parents=[common], help="train the reference MLP"
    )
    training_flags(sub)

    sub = commands.add_parser(
        "prepare",
        parents=[common],
        help="generate the dataset, then train the MLP",
    )
    dataset_size(sub)
    training_flags(sub)

    sub = commands.add_parser(
        "explain", parents=[common], help="explain one point"
    )
    sub.add_argument("--point", type=int, required=True, help="point index")
    sub.add_argument(
        "--class",
        dest="class_index",
        type=int,
        help="explained class (default: the predicted one)",
    )
    sub.add_argument(
        "--split", default="test", choices=("train", "valid", "test")
    )

    sub = commands.add_parser(
        "validate",
        parents=[common],
        help="correlate explanations with the ground truths",
    )
    sub.add_argument("--n-points", type=int)
    sub.add_argument("--class", dest="class_index", type=int)

    sub = commands.add_parser(
        "swaptest", parents=[common], help="run the swap test"
    )
    sub.add_argument("--pairs", type=int)
    sub.add_argument("--class", dest="class_index", type=int)

    sub = commands.add_parser(
        "bench", parents=[common], help="count evaluations, cold vs warm"
    )
    sub.add_argument("--point", type=int, default=0, help="point index")

    sub = commands.add_parser(
        "stability",
        parents=[common],
        help="agreement of the dominance categories across seeds",
    )
    sub.add_argument("--seeds", type=int, help="number of seeds")
    sub.add_argument("--class", dest="class_index", type=int)

    return parser


# ----------------------------------------------------------------------
# Configuration


def _overrides(args: argparse.Namespace) -> dict:
    """The configuration settings given as flags."""

    def flag(name):
        return getattr(args, name, None)

    overrides = {
        "seed": args.seed,
        "workers": args.workers,
        "out": args.out,
        "data_dir": args.data_dir,
        "disentangle.n_samples": args.n_samples,
        "surrogate.lime_samples": args.lime_samples,
        "surrogate.ridge_lambda": args.ridge_lambda,
        "surrogate.kernel_width": args.kernel_width,
        "surrogate.keep_probability": args.keep_prob,
        "model.model_path": args.model_path,
        "training.epochs": flag("epochs"),
        "training.accuracy_floor": flag("accuracy_floor"),
        "validation.n_points": flag("n_points"),
        "validation.swap_pairs": flag("pairs"),
        "validation.stability_seeds": flag("seeds"),
    }
    if args.command in ("validate", "swaptest"):
        overrides["validation.explained_class"] = flag("class_index")
    return overrides


def build_experiment(args: argparse.Namespace) -> Experiment:
    """Read, override and validate the configuration of a command.

    :raises ValueError: If the configuration is not valid.
    :raises OSError: If the configuration file can't be read.
    """
    builder = ExperimentBuilder()
    if args.config:
        builder.read_config_file(args.config)
    return (
        builder.apply_overrides(_overrides(args))
        .set_model_source(args.model)
        .validate_configuration()
        .build()
    )


# ----------------------------------------------------------------------
# Commands


def _create_action(
    args: argparse.Namespace,
    experiment: Experiment,
    model: BlackBoxModel | None,
) -> PipelineAction:
    config = experiment.config
    match args.command:
        case "gen-data":
            return GenerateData(config, args.n)
        case "train":
            return TrainModel(config, args.progress)
        case "prepare":
            return PipelineActionSequence(
                [
                    GenerateData(config, args.n),
                    TrainModel(config, args.progress),
                ]
            )
        case "explain":
            return ExplainPoint(
                config, model, args.point, args.class_index, args.split
            )
        case "validate":
            return ValidateRq1(config, model, args.progress)
        case "swaptest":
            return RunSwapTest(config, model)
        case "bench":
            return Benchmark(config, model, args.point)
        case "stability":
            return MeasureStability(config, model, args.class_index)
    raise ValueError(f"Unknown command {args.command}.")


COMMANDS_WITHOUT_MODEL = ("gen-data", "train", "prepare")


def run_command(args: argparse.Namespace) -> None:
    """Build the experiment and execute the action of a command.

    :raises AcceptanceError: If the result fails its checks.
    """
    experiment = build_experiment(args)
    if args.command in COMMANDS_WITHOUT_MODEL:
        _create_action(args, experiment, None).execute()
        return
    with experiment.model_factory.open_model() as model:
        _create_action(args, experiment, model).execute()


def _exit_status(error: BaseException) -> int:
    statuses: list[tuple[type, int]] = [
        (AcceptanceError, EXIT_ACCEPTANCE),
        (GatewayError, EXIT_MODEL),
        (TrainingError, EXIT_MODEL),
        (ValueError, EXIT_USAGE),
        (OSError, EXIT_USAGE),
        (yaml.YAMLError, EXIT_USAGE),
    ]
    for error_class, status in statuses:
        if isinstance(error, error_class):
            return status
    raise error


def main(
    argv: list[str] | None = None,
    command_runner: Callable[[argparse.Namespace], None] = run_command,
) -> int:
    """Run the command line.

    :param argv: The arguments (default: ``sys.argv[1:]``).
    :param command_runner: Executes the parsed command.
    :return: The exit status.
    """
    args = build_parser().parse_args(argv)
    configure_logging(level=logging.DEBUG if args.verbose else logging.INFO)

    try:
        command_runner(args)
    except Exception as error:  # pylint: disable=broad-exception-caught
        status = _exit_status(error)
        _logger.error("%s failed: %s", args.command, error)
        return status

    _logger.info("%s completed.", args.command)
    return EXIT_OK


def run() -> None:
    """Entry point of the ``disentangled-explainer`` script."""
    sys.exit(main())
