# polytransform/commands/verify.py

import argparse
import logging
import uuid
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator
from rich.console import Console
from rich.table import Table

from ..algorithms import FACTORIZERS, Algorithm
from ..config import DEFAULT_CONFIG
from ..run_logging import RunLogger
from .base import EXIT_NUMERICAL_FAILURE, EXIT_OK, BaseCommand

GRID_K = range(1, 5)
GRID_M = range(1, 9)
GRID_MAX_SIZE = 64


class VerifyArgs(BaseModel):
    """Arguments for the verify command."""
    algorithm: Algorithm
    k: Optional[int] = Field(None, ge=1)
    m: Optional[int] = Field(None, ge=1)
    tol: float = Field(DEFAULT_CONFIG.verify_tol, gt=0, description="Relative Frobenius tolerance.")
    grid: bool = Field(False, description="Verify the whole (k, m) grid instead of one split.")
    log_dir: Optional[Path] = None

    @model_validator(mode="after")
    def check_split_given(self):
        if not self.grid and (self.k is None or self.m is None):
            raise ValueError("Both K and M are required unless --grid is given.")
        return self


class VerificationResult(BaseModel):
    k: int
    m: int
    n: int
    relative_error: float
    passed: bool
    labels: List[str]
    shapes: List[Tuple[int, int]]
    factor_flops: List[int]

    @property
    def real_flops(self) -> int:
        return sum(self.factor_flops)


def transform_size(algorithm: Algorithm, k: int, m: int) -> int:
    return k * m if algorithm is Algorithm.COOLEY_TUKEY else 2 * k * m


def grid_points(algorithm: Algorithm) -> List[Tuple[int, int]]:
    return [(k, m) for k in GRID_K for m in GRID_M if transform_size(algorithm, k, m) <= GRID_MAX_SIZE]


def verify_split(algorithm: Algorithm, k: int, m: int, tol: float) -> VerificationResult:
    """Builds one factorization and compares its densified product with the catalog transform."""
    factorization = FACTORIZERS[algorithm](k, m)
    error = factorization.relative_error()
    return VerificationResult(
        k=k,
        m=m,
        n=factorization.target.shape[0],
        relative_error=error,
        passed=error <= tol,
        labels=factorization.labels,
        shapes=[factor.shape for factor in factorization.factors],
        factor_flops=[factor.cost().total_real_flops for factor in factorization.factors],
    )


class VerifyCommand(BaseCommand):
    """Checks a fast-algorithm factorization against the dense oracle."""

    @property
    def name(self) -> str:
        return "verify"

    @property
    def description(self) -> str:
        return "Verify a cooley-tukey, britanak-rao or wang factorization against the dense transform."

    @property
    def args_schema(self) -> type[BaseModel]:
        return VerifyArgs

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("algorithm", help=", ".join(a.value for a in Algorithm))
        parser.add_argument("k", type=int, nargs="?", default=None)
        parser.add_argument("m", type=int, nargs="?", default=None)
        parser.add_argument("--tol", type=float, default=DEFAULT_CONFIG.verify_tol)
        parser.add_argument("--grid", action="store_true", help="run every (k, m) with k <= 4, m <= 8, size <= 64")
        parser.add_argument("--log-dir", type=Path, default=None, help="write run.raw.jsonl and run.readable.log here")

    def execute(self, args: VerifyArgs, console: Console) -> int:
        run_logger = None
        if args.log_dir:
            run_logger = RunLogger(f"verify-{args.algorithm.value}-{uuid.uuid4().hex[:8]}", args.log_dir, logging.getLogger("rich"))
            run_logger.log_setup("verify", args.model_dump(mode="json", exclude={"log_dir"}))

        try:
            if args.grid:
                results = self._run_grid(args)
                self._print_grid(console, args, results)
            else:
                results = [verify_split(args.algorithm, args.k, args.m, args.tol)]
                self._print_single(console, results[0], args.tol)
                if run_logger:
                    for index, (label, shape, flops) in enumerate(zip(results[0].labels, results[0].shapes, results[0].factor_flops)):
                        run_logger.log_factor(index, label, list(shape), flops)

            failed = [r for r in results if not r.passed]
            for r in failed:
                logging.error(f"{args.algorithm.value}(k={r.k}, m={r.m}): relative error {r.relative_error:.3e} exceeds {args.tol:.1e}")

            if run_logger:
                for r in results:
                    run_logger.log_check(
                        f"{args.algorithm.value}(k={r.k}, m={r.m})", r.passed,
                        {"n": r.n, "relative_error": r.relative_error, "real_flops": r.real_flops},
                    )
                worst = max(r.relative_error for r in results)
                run_logger.log_result(EXIT_NUMERICAL_FAILURE if failed else EXIT_OK, worst, [])
            return EXIT_NUMERICAL_FAILURE if failed else EXIT_OK
        finally:
            if run_logger:
                run_logger.close()

    def _run_grid(self, args: VerifyArgs) -> List[VerificationResult]:
        points = grid_points(args.algorithm)
        logging.info(f"Verifying {len(points)} {args.algorithm.value} splits")
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda km: verify_split(args.algorithm, km[0], km[1], args.tol), points))
        return sorted(results, key=lambda r: (r.k, r.m))

    def _print_single(self, console: Console, result: VerificationResult, tol: float) -> None:
        console.print(f"{result.n}-point factorization (k={result.k}, m={result.m}), {len(result.labels)} factors:")
        for index, (label, shape) in enumerate(zip(result.labels, result.shapes)):
            console.print(f"  [{index}] {label} ({shape[0]}x{shape[1]})", markup=False)
        status = "PASS" if result.passed else "FAIL"
        console.print(f"relative error: {result.relative_error:.3e} (tol {tol:.1e}) {status}")

    def _print_grid(self, console: Console, args: VerifyArgs, results: List[VerificationResult]) -> None:
        table = Table(title=f"{args.algorithm.value} grid (tol {args.tol:.1e})")
        for column in ("k", "m", "n", "relative error", "real flops", "status"):
            table.add_column(column, justify="right")
        for r in results:
            table.add_row(
                str(r.k), str(r.m), str(r.n), f"{r.relative_error:.3e}", str(r.real_flops),
                "PASS" if r.passed else "FAIL",
            )
        console.print(table)
