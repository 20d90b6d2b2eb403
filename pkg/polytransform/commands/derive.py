# polytransform/commands/derive.py

import argparse
import logging
import re
import sys
import uuid
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field
from rich.console import Console

from ..config import DEFAULT_CONFIG
from ..factorization import Factorization
from ..induction import induction_factorize, ones_count_check, transversal_check
from ..matrix_io import render_matrix
from ..run_logging import RunLogger
from ..specfile import load_spec
from .base import EXIT_NUMERICAL_FAILURE, EXIT_OK, EXIT_PRECONDITION, BaseCommand


class DeriveArgs(BaseModel):
    """Arguments for the derive command."""
    spec: Path = Field(..., description="Path to a spec file.")
    emit_factors: Optional[Path] = Field(None, description="Directory for NN_<label>.txt factor files and product.txt.")
    tol: float = Field(DEFAULT_CONFIG.derive_tol, gt=0)
    log_dir: Optional[Path] = None


def factor_filename(index: int, label: str) -> str:
    slug = re.sub(r"[^A-Za-z0-9]+", "-", label).strip("-").lower() or "factor"
    return f"{index:02d}_{slug}.txt"


def write_factors(factorization: Factorization, directory: Optional[Path]) -> None:
    """Writes every factor and the product, to a directory or to stdout with '# <index> <label>' headers."""
    product = factorization.product()
    if directory is None:
        for index, factor in enumerate(factorization.factors):
            sys.stdout.write(f"# {index} {factor.label}\n{render_matrix(factor.to_dense())}")
        sys.stdout.write(f"# product\n{render_matrix(product)}")
        sys.stdout.flush()
        return

    directory.mkdir(parents=True, exist_ok=True)
    for index, factor in enumerate(factorization.factors):
        (directory / factor_filename(index, factor.label)).write_text(render_matrix(factor.to_dense()), encoding="utf-8")
    (directory / "product.txt").write_text(render_matrix(product), encoding="utf-8")
    logging.info(f"Wrote {len(factorization.factors)} factors and the product to {directory}")


class DeriveCommand(BaseCommand):
    """Runs the induction factorization on a spec file."""

    @property
    def name(self) -> str:
        return "derive"

    @property
    def description(self) -> str:
        return "Factor the polynomial transform described by a spec file through a subalgebra induction."

    @property
    def args_schema(self) -> type[BaseModel]:
        return DeriveArgs

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("spec", type=Path)
        parser.add_argument("--emit-factors", type=Path, default=None, help="directory for the factor files")
        parser.add_argument("--tol", type=float, default=DEFAULT_CONFIG.derive_tol)
        parser.add_argument("--log-dir", type=Path, default=None)

    def execute(self, args: DeriveArgs, console: Console) -> int:
        spec = load_spec(args.spec)

        run_logger = None
        if args.log_dir:
            run_logger = RunLogger(f"derive-{args.spec.stem}-{uuid.uuid4().hex[:8]}", args.log_dir, logging.getLogger("rich"))
            run_logger.log_setup("derive", {"spec": str(args.spec), "n": len(spec.alpha), "tol": args.tol})

        try:
            report = transversal_check(spec)
            if run_logger:
                run_logger.log_check("transversal", report.is_transversal, report.model_dump())
            if not report.is_transversal:
                logging.error(f"Transversal check failed: {report.summary()}")
                if run_logger:
                    run_logger.log_result(EXIT_PRECONDITION, None, [])
                return EXIT_PRECONDITION

            factorization = induction_factorize(spec)
            for index, factor in enumerate(factorization.factors):
                if run_logger:
                    run_logger.log_factor(index, factor.label, list(factor.shape), factor.cost().total_real_flops)
            write_factors(factorization, args.emit_factors)

            error = factorization.relative_error()
            ones_ok = ones_count_check(spec)
            passed = error <= args.tol
            logging.info(f"Reconstruction error: {error:.3e} (tol {args.tol:.1e})")
            logging.info(f"Ones-count check: {'PASS' if ones_ok else 'FAIL'}")
            for warning in factorization.warnings:
                logging.warning(warning)
            if not passed:
                logging.error(f"Reconstruction error {error:.3e} exceeds tolerance {args.tol:.1e}")

            exit_code = EXIT_OK if passed else EXIT_NUMERICAL_FAILURE
            if run_logger:
                run_logger.log_check("ones-count", ones_ok, {})
                run_logger.log_check("reconstruction", passed, {"relative_error": error, "tol": args.tol})
                run_logger.log_result(exit_code, error, factorization.warnings)
            return exit_code
        finally:
            if run_logger:
                run_logger.close()
