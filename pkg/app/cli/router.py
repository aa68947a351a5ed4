"""Command-line entry point: parses flags, configures logging, dispatches."""

import argparse
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from app.cli.commands import COMMANDS
from app.cli.common import validation_message
from app.cli.schemas import GlobalOptions
from app.core.config import get_settings
from app.core.exceptions import EXIT_USAGE, handle_cli_error
from app.core.logging import configure_logging
from app.core.middleware import command_context


def _add_global_flags(parser: argparse.ArgumentParser, default: object) -> None:
    parser.add_argument("--tol", type=float, default=default, help="relative rank tolerance")
    parser.add_argument("--threads", default=default, help="worker threads: N or auto")
    parser.add_argument("--log-level", dest="log_level", default=default)
    parser.add_argument("--log-format", dest="log_format", choices=["json", "console"], default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="touter",
        description="t-product tensor algebra and outer generalized inverses",
    )
    _add_global_flags(parser, None)

    # Subcommands accept the global flags too; SUPPRESS keeps them from
    # overwriting values given before the subcommand name.
    shared = argparse.ArgumentParser(add_help=False)
    _add_global_flags(shared, argparse.SUPPRESS)

    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in COMMANDS:
        command.register(subparsers, [shared])
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        options = GlobalOptions(
            tol=args.tol, threads=args.threads, log_level=args.log_level, log_format=args.log_format
        )
    except ValidationError as exc:
        print(f"error: {validation_message(exc)}", file=sys.stderr)
        return EXIT_USAGE

    settings = get_settings()
    overrides = {
        key: value
        for key, value in (("log_level", options.log_level), ("log_format", options.log_format))
        if value is not None
    }
    configure_logging(settings.model_copy(update=overrides))

    try:
        with command_context(args.command):
            return args.handler(args, options)
    except ValidationError as exc:
        print(f"error: {validation_message(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        return handle_cli_error(exc)
