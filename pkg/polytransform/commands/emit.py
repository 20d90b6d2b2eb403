# polytransform/commands/emit.py

import argparse
import logging
from typing import Optional

from pydantic import BaseModel, Field
from rich.console import Console

from ..matrix_io import write_matrix
from ..transforms import TransformName, named_transform
from .base import EXIT_OK, BaseCommand


class EmitArgs(BaseModel):
    """Arguments for the emit command."""
    name: TransformName = Field(..., description="Catalog name of the transform, e.g. 'dft' or 'dct4'.")
    n: int = Field(..., ge=0, description="Transform size.")
    output: Optional[str] = Field(None, description="Destination file; omitted or '-' writes to stdout.")


class EmitCommand(BaseCommand):
    """Writes a named catalog transform in the text matrix format."""

    @property
    def name(self) -> str:
        return "emit"

    @property
    def description(self) -> str:
        return "Write a named transform matrix (dft, dct1..dct4, dst1..dst4, pol-*) in the text matrix format."

    @property
    def args_schema(self) -> type[BaseModel]:
        return EmitArgs

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("name", help=", ".join(t.value for t in TransformName))
        parser.add_argument("n", type=int, help="transform size")
        parser.add_argument("output", nargs="?", default=None, help="output file (default: stdout)")

    def execute(self, args: EmitArgs, console: Console) -> int:
        matrix = named_transform(args.name, args.n)
        write_matrix(matrix, args.output)
        if args.output not in (None, "-"):
            logging.info(f"Wrote {args.name.value} of size {args.n} to {args.output}")
        return EXIT_OK
