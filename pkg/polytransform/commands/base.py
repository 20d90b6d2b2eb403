# polytransform/commands/base.py

import argparse
from abc import ABC, abstractmethod
from typing import Type

from pydantic import BaseModel
from rich.console import Console

EXIT_OK = 0
EXIT_NUMERICAL_FAILURE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class BaseCommand(ABC):
    """
    An abstract base class for the subcommands of the polytransform CLI.

    Subclasses are discovered dynamically by `cli.py`. Each one declares its
    argparse surface in `add_arguments`, validates the parsed values through the
    Pydantic model named by `args_schema`, and returns a process exit code from
    `execute`: 0 pass, 1 numerical failure, 2 usage or parse error, 3 failed
    precondition.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """The subcommand name as typed on the command line."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @property
    @abstractmethod
    def args_schema(self) -> Type[BaseModel]:
        """The Pydantic model that validates the parsed arguments."""
        pass

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    @abstractmethod
    def execute(self, args: BaseModel, console: Console) -> int:
        """
        Runs the command.

        Args:
            args: The validated arguments, an instance of `args_schema`.
            console: The console for data output (stdout). Diagnostics go through logging.

        Returns:
            The process exit code.
        """
        pass
