# polytransform/factorization.py

from functools import reduce
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .operators import CostReport, LinOp, ZERO_COST
from .utils import relative_error


class Factorization(BaseModel):
    """
    An ordered list of structured factors whose product equals a target transform.
    factors[0] is the leftmost factor, so factors[-1] is applied to an input first.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str = Field(..., description="Human-readable name, e.g. 'britanak-rao(k=2, m=3)'.")
    target: np.ndarray = Field(..., description="The dense transform the factors reproduce.")
    factors: List[LinOp] = Field(..., min_length=1)
    warnings: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_chain(self) -> "Factorization":
        for left, right in zip(self.factors, self.factors[1:]):
            if left.cols != right.rows:
                raise ValueError(f"Factor {left.describe()} does not chain into {right.describe()}.")
        if self.factors[0].rows != self.target.shape[0] or self.factors[-1].cols != self.target.shape[1]:
            raise ValueError(
                f"Factors span {self.factors[0].rows}x{self.factors[-1].cols} but the target is {self.target.shape}."
            )
        return self

    @property
    def labels(self) -> List[str]:
        return [factor.label for factor in self.factors]

    def product(self) -> np.ndarray:
        """The densified product of all factors."""
        return reduce(np.matmul, [factor.to_dense() for factor in self.factors])

    def relative_error(self, product: Optional[np.ndarray] = None) -> float:
        return relative_error(self.product() if product is None else product, self.target)

    def cost(self) -> CostReport:
        return sum((factor.cost() for factor in self.factors), ZERO_COST)
