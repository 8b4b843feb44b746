from argparse import Action, ArgumentParser, Namespace
from collections.abc import Sequence
import configparser
import logging
from pathlib import Path

from ppife.parameters.run import RunConfig
from ppife.runner import run_experiment, run_properties

LOGGER = logging.getLogger(__name__)
PROJECT_NAME = "ppife"

#: Configuration files are flat, their keys land in this section
CONFIG_SECTION = "run"


def _long_options(parser: ArgumentParser) -> dict[str, Action]:
    """Actions by long option name, with dashes replaced by underscores."""
    return {
        option.removeprefix("--").replace("-", "_"): action
        for action in parser._actions  # pyright: ignore[reportPrivateUsage]
        for option in action.option_strings
        if option.startswith("--")
    }


def read_config(parser: ArgumentParser, path: Path) -> dict[str, object]:
    """Argument defaults from a `key = value` file, keys being long option names."""
    config = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    config.read_string(f"[{CONFIG_SECTION}]\n{path.read_text()}", source=str(path))
    section = config[CONFIG_SECTION]
    options = _long_options(parser)

    defaults: dict[str, object] = {}
    for key, value in section.items():
        action = options.get(key.replace("-", "_"))
        if action is None or action.dest in ("help", "config"):
            raise ValueError(f"Unknown configuration key in {path}: {key}")
        if action.nargs == 0:
            flag = section.getboolean(key)
            # --no-* options store False when given
            defaults[action.dest] = flag if action.const is True else not flag
        else:
            defaults[action.dest] = value
    return defaults


def _parse_arguments(argv: Sequence[str] | None = None) -> Namespace:
    parser = ArgumentParser(prog=PROJECT_NAME)
    commands = parser.add_subparsers(dest="command", required=True)
    run_parser = commands.add_parser(
        "run", help="Convergence study over a refinement ladder, and property suites"
    )
    _ = run_parser.add_argument(
        "--config",
        metavar="PATH",
        type=Path,
        help="Configuration file of key = value lines, overridden by the command line",
    )
    RunConfig.add_cli_arguments(run_parser)

    logging_group = run_parser.add_argument_group("Logging")
    _ = logging_group.add_argument(
        "--debug",
        "-D",
        action="store_true",
        help="Enable debug logging",
    )

    namespace = parser.parse_args(argv)
    config_path: Path | None = namespace.config  # pyright: ignore[reportAny]
    if config_path is not None:
        try:
            run_parser.set_defaults(**read_config(run_parser, config_path))
        except (OSError, ValueError, configparser.Error) as error:
            parser.error(str(error))
        namespace = parser.parse_args(argv)
    return namespace


def _setup_logging(*, debug: bool = False) -> None:
    # Only show warnings and errors from 3rd party libraries
    logging.basicConfig(level=logging.WARNING)
    # Set the verbosity of the project's logger
    logging.getLogger(PROJECT_NAME).setLevel(logging.DEBUG if debug else logging.INFO)


def main(argv: Sequence[str] | None = None) -> None:
    # Parse the CLI arguments
    namespace = _parse_arguments(argv)
    # Setup logging
    _setup_logging(debug=namespace.debug)  # pyright: ignore[reportAny]
    LOGGER.debug("CLI arguments: %s", namespace)

    try:
        config = RunConfig.from_cli_arguments(namespace)
    except ValueError as error:
        raise SystemExit(f"Invalid configuration: {error}") from error

    # Convergence study
    result = run_experiment(config)
    succeeded = result.completed
    # Property suites, if requested
    if config.verification.enabled:
        report = run_properties(config)
        succeeded = succeeded and report.passed

    if not succeeded:
        raise SystemExit(1)
