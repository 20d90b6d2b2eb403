# cli.py

import argparse
import importlib
import inspect
import logging
import pkgutil
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from polytransform import commands
from polytransform.commands.base import EXIT_NUMERICAL_FAILURE, EXIT_PRECONDITION, EXIT_USAGE, BaseCommand
from polytransform.errors import (
    DecompositionError, DimensionMismatchError, MalformedSpecError, MatrixFormatError, PlanError,
    SpecParseError, TransversalError, UnknownTransformError,
)

# --- Setup Logging to the error stream ---
error_console = Console(stderr=True)
logging.basicConfig(
    level="INFO",
    format="%(message)s",
    datefmt="[%X]",
    handlers=[RichHandler(
        console=error_console,
        rich_tracebacks=True,
        markup=True,
        show_path=False,
        show_time=False,
        show_level=False
    )]
)
log = logging.getLogger("rich")
console = Console()

USAGE_ERRORS = (
    ValidationError, SpecParseError, MalformedSpecError, UnknownTransformError, DimensionMismatchError,
    PlanError, MatrixFormatError, FileNotFoundError,
)
PRECONDITION_ERRORS = (TransversalError, DecompositionError)


def load_commands() -> Dict[str, BaseCommand]:
    """
    Dynamically discovers and loads all command classes from the `commands` package.
    """
    loaded = {}
    for _, module_name, _ in pkgutil.iter_modules(commands.__path__, commands.__name__ + "."):
        if module_name.endswith(".base"):
            continue

        module = importlib.import_module(module_name)
        for _, cls in inspect.getmembers(module, inspect.isclass):
            if issubclass(cls, BaseCommand) and cls is not BaseCommand:
                command = cls()
                loaded[command.name] = command
    return loaded


def build_parser(loaded: Dict[str, BaseCommand]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polytransform",
        description="Polynomial transforms, induction-based factorizations and general-radix fast algorithms.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug-level logging")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in sorted(loaded):
        command = loaded[name]
        subparser = subparsers.add_parser(name, help=command.description, description=command.description)
        command.add_arguments(subparser)
    return parser


def _report(message: str) -> None:
    error_console.print(f"[bold red]Error:[/bold red] {escape(message)}")


def main(argv: Optional[List[str]] = None) -> int:
    """Parses `argv`, runs one command and returns its exit code."""
    loaded = load_commands()
    parser = build_parser(loaded)
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.getLogger().setLevel(logging.DEBUG if namespace.verbose else logging.INFO)
    command = loaded[namespace.command]
    raw_args = {key: value for key, value in vars(namespace).items() if key not in ("command", "verbose")}

    try:
        args = command.args_schema(**raw_args)
        return command.execute(args, console)
    except ValidationError as e:
        details = "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'arguments'}: {err['msg']}" for err in e.errors())
        _report(details)
        return EXIT_USAGE
    except PRECONDITION_ERRORS as e:
        _report(str(e))
        return EXIT_PRECONDITION
    except USAGE_ERRORS as e:
        _report(str(e))
        return EXIT_USAGE
    except Exception as e:
        _report(f"An unexpected error occurred in '{namespace.command}'.")
        log.exception(e)
        return EXIT_NUMERICAL_FAILURE


def run_cli():
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
