"""
Main application entry point for the tropical command line tool.

Run as ``python -m src.app <command> ...``. This module builds the
argument parser, configures logging and runs the chosen command through
the logging middleware, turning errors into exit codes.
"""

import argparse
import logging
import sys
from typing import List, Optional

from src import __version__
from src.handlers.commands import register_command_handlers
from src.middleware.logging_middleware import logging_middleware
from src.services.files import format_row
from src.tropical.errors import InvariantViolation, TropicalError, WitnessViolationError
from src.utils.logger import setup_logging
from src.utils.metrics import metrics_collector

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_INVARIANT = 2


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def create_parser() -> ArgumentParser:
    """
    Create the argument parser with every subcommand registered.

    Returns:
        ArgumentParser: The configured parser
    """
    parser = ArgumentParser(
        prog="tropical",
        description="Exact tropical polynomial systems, Cayley matrices and feasibility.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    subparsers.required = True
    register_command_handlers(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one command.

    Returns:
        The process exit code
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    try:
        setup_logging(args.log_level)
    except ValueError as e:
        parser.error(str(e))

    try:
        return logging_middleware(args, lambda: args.handler(args))
    except WitnessViolationError as e:
        rows = ", ".join(format_row(row) for row in e.violated_rows[:20])
        print(f"error: {e}\nviolated rows: {rows}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        print(f"error: invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (TropicalError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        metrics_collector.log_summary()


if __name__ == "__main__":
    sys.exit(main())
