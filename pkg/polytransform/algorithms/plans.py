# polytransform/algorithms/plans.py

import logging
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from ..config import DEFAULT_CONFIG
from ..errors import PlanError
from ..operators import Compose, CostReport, Dense, LinOp
from ..transforms import TransformName, named_transform
from ..utils import smallest_prime_factor
from .britanak_rao import britanak_rao_factors
from .cooley_tukey import cooley_tukey_factors
from .wang import wang_factors


class Algorithm(str, Enum):
    COOLEY_TUKEY = "cooley-tukey"
    BRITANAK_RAO = "britanak-rao"
    WANG_DCT4 = "wang"

    @property
    def transform(self) -> TransformName:
        return TransformName.DCT_IV if self is Algorithm.WANG_DCT4 else TransformName.DFT


class PlanNode(BaseModel):
    """One node of the recursion tree; a node without a split is a dense leaf."""
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    k: Optional[int] = None
    m: Optional[int] = None
    children: Tuple["PlanNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.k is None


PlanNode.model_rebuild()


class RadixPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    algorithm: Algorithm
    n: int = Field(..., ge=1)
    leaf_threshold: int = Field(DEFAULT_CONFIG.leaf_threshold, ge=1)
    root: PlanNode

    _operator: Optional[LinOp] = PrivateAttr(default=None)

    @property
    def splits(self) -> List[Tuple[int, int, int]]:
        """Every (n, k, m) split in pre-order."""
        found: List[Tuple[int, int, int]] = []

        def walk(node: PlanNode) -> None:
            if not node.is_leaf:
                found.append((node.n, node.k, node.m))
            for child in node.children:
                walk(child)

        walk(self.root)
        return found

    @property
    def depth(self) -> int:
        def height(node: PlanNode) -> int:
            return 0 if node.is_leaf else 1 + max((height(c) for c in node.children), default=0)
        return height(self.root)

    def operator(self) -> LinOp:
        """The fully expanded operator tree, built once and cached."""
        if self._operator is None:
            self._operator = _node_operator(self.algorithm, self.root)
        return self._operator


def _choose_split(algorithm: Algorithm, n: int) -> Optional[Tuple[int, int]]:
    if algorithm is Algorithm.COOLEY_TUKEY:
        k = smallest_prime_factor(n)
        return (k, n // k) if 1 < k < n else None
    if n % 2:
        return None
    half = n // 2
    k = smallest_prime_factor(half) if half > 1 else 1
    return k, half // k


def _build_node(algorithm: Algorithm, n: int, leaf_threshold: int) -> PlanNode:
    if n <= leaf_threshold:
        return PlanNode(n=n)
    split = _choose_split(algorithm, n)
    # sub-problems without a valid split (prime sizes, odd DCT-IV sizes) stay dense
    if split is None:
        return PlanNode(n=n)
    k, m = split
    children = [_build_node(algorithm, k, leaf_threshold)]
    if algorithm is Algorithm.COOLEY_TUKEY:
        children.append(_build_node(algorithm, m, leaf_threshold))
    return PlanNode(n=n, k=k, m=m, children=tuple(children))


def build_plan(algorithm: Algorithm, n: int, leaf_threshold: int = DEFAULT_CONFIG.leaf_threshold) -> RadixPlan:
    """
    Builds the recursion tree for a transform of size n, always choosing the
    smallest prime factor as the radix k (of n for Cooley-Tukey, of n/2 for
    Britanak-Rao and Wang).

    Raises:
        PlanError: If n has no valid split and is larger than leaf_threshold.
    """
    algorithm = Algorithm(algorithm)
    if n < 1:
        raise PlanError(f"Transform size must be positive, got {n}.")
    if leaf_threshold < 1:
        raise PlanError(f"Leaf threshold must be positive, got {leaf_threshold}.")
    if n > leaf_threshold and _choose_split(algorithm, n) is None:
        raise PlanError(f"{algorithm.value} has no valid split for n = {n} (leaf threshold {leaf_threshold}).")

    plan = RadixPlan(
        algorithm=algorithm,
        n=n,
        leaf_threshold=leaf_threshold,
        root=_build_node(algorithm, n, leaf_threshold),
    )
    logging.debug(f"Built {algorithm.value} plan for n = {n}: splits {plan.splits}")
    return plan


def _node_operator(algorithm: Algorithm, node: PlanNode) -> LinOp:
    if node.is_leaf:
        name = algorithm.transform
        return Dense(named_transform(name, node.n), label=f"{name.value}_{node.n}")

    children = [_node_operator(algorithm, child) for child in node.children]
    if algorithm is Algorithm.COOLEY_TUKEY:
        factors = cooley_tukey_factors(node.k, node.m, dft_k=children[0], dft_m=children[1])
    elif algorithm is Algorithm.BRITANAK_RAO:
        factors = britanak_rao_factors(node.k, node.m, dft_k=children[0])
    else:
        factors = wang_factors(node.k, node.m, dct4_k=children[0])
    return Compose(factors, label=f"{algorithm.value}(n={node.n}, k={node.k}, m={node.m})")


def plan_operator(plan: RadixPlan) -> LinOp:
    return plan.operator()


def plan_apply(plan: RadixPlan, x) -> np.ndarray:
    """Applies the expanded plan matrix-free to a vector (or a (n, batch) block)."""
    return plan.operator().apply(x)


def plan_cost(plan: RadixPlan) -> CostReport:
    return plan.operator().cost()
