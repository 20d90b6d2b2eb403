# polytransform/commands/bench.py

import argparse
import logging
import math
import time
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator
from rich.console import Console
from rich.table import Table

from ..algorithms import Algorithm, build_plan, plan_apply, plan_cost
from ..config import DEFAULT_CONFIG
from .base import EXIT_OK, BaseCommand


class BenchArgs(BaseModel):
    """Arguments for the bench command."""
    algorithm: Algorithm
    sizes: List[int] = Field([64, 256, 1024], min_length=1, description="Transform sizes, e.g. '64,256,1024'.")
    reps: int = Field(5, ge=1, description="Timed applications per size; the median is reported.")
    leaf_threshold: int = Field(DEFAULT_CONFIG.leaf_threshold, ge=1)

    @field_validator("sizes", mode="before")
    @classmethod
    def split_sizes(cls, value):
        if isinstance(value, str):
            return [token.strip() for token in value.split(",") if token.strip()]
        return value

    @field_validator("sizes")
    @classmethod
    def check_positive(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError("Every size must be positive.")
        return value


class BenchRow(BaseModel):
    n: int
    real_flops: int
    seconds_per_apply: float

    @property
    def normalized_flops(self) -> Optional[float]:
        """flops / (n log2 n); undefined for n = 1."""
        if self.n < 2:
            return None
        return self.real_flops / (self.n * math.log2(self.n))


def bench_size(algorithm: Algorithm, n: int, reps: int, leaf_threshold: int) -> BenchRow:
    plan = build_plan(algorithm, n, leaf_threshold)
    cost = plan_cost(plan)
    x = np.random.default_rng(n).standard_normal(n) + 0j
    timings = []
    for _ in range(reps):
        start = time.perf_counter()
        plan_apply(plan, x)
        timings.append(time.perf_counter() - start)
    return BenchRow(n=n, real_flops=cost.total_real_flops, seconds_per_apply=float(np.median(timings)))


class BenchCommand(BaseCommand):
    """Counts flops and times the matrix-free apply of a recursive plan."""

    @property
    def name(self) -> str:
        return "bench"

    @property
    def description(self) -> str:
        return "Report flop counts, median apply time and flops/(n log2 n) for a recursive plan."

    @property
    def args_schema(self) -> type[BaseModel]:
        return BenchArgs

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("algorithm", help=", ".join(a.value for a in Algorithm))
        parser.add_argument("--sizes", default="64,256,1024", help="comma-separated sizes")
        parser.add_argument("--reps", type=int, default=5)
        parser.add_argument("--leaf-threshold", type=int, default=DEFAULT_CONFIG.leaf_threshold)

    def execute(self, args: BenchArgs, console: Console) -> int:
        rows: List[BenchRow] = []
        for n in args.sizes:
            logging.info(f"Benchmarking {args.algorithm.value} at n = {n}")
            rows.append(bench_size(args.algorithm, n, args.reps, args.leaf_threshold))

        table = Table(title=f"{args.algorithm.value} (leaf threshold {args.leaf_threshold}, {args.reps} reps)")
        for column in ("n", "real flops", "time/apply (s)", "flops/(n log2 n)"):
            table.add_column(column, justify="right")
        for row in rows:
            ratio = row.normalized_flops
            table.add_row(
                str(row.n), str(row.real_flops), f"{row.seconds_per_apply:.3e}",
                "-" if ratio is None else f"{ratio:.4f}",
            )
        console.print(table)
        return EXIT_OK
