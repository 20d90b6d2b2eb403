# polytransform/algorithms/wang.py

from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import MalformedSpecError
from ..factorization import Factorization
from ..operators import (
    Compose, Dense, DirectSum, Identity, LinOp, PermK, StrideL, Tensor, Transpose,
)
from ..transforms import TransformName, named_transform
from ..utils import cospi_frac, sinpi_frac

Angle = Union[Fraction, float]


class SkewParams(BaseModel):
    """
    Angle parameters of the skew rotation blocks for block index i:
    r_i = (2i+1)/(4m), and the k values r_ij whose cosines are the roots of
    T_k(x) - cos(r_i * pi).
    """
    model_config = ConfigDict(frozen=True)

    i: int = Field(..., ge=0)
    k: int = Field(..., ge=1)
    m: int = Field(..., ge=1)

    @property
    def r_i(self) -> Fraction:
        return Fraction(2 * self.i + 1, 4 * self.m)

    @property
    def r_ij(self) -> Tuple[Fraction, ...]:
        r, k = self.r_i, self.k
        values = [(r + 2 * j) / k if j % 2 == 0 else (2 - r + 2 * j) / k for j in range(k)]
        if k % 2:
            values[-1] = (r - 1) / k + 1
        return tuple(values)


def skew_params(i: int, k: int, m: int) -> SkewParams:
    return SkewParams(i=i, k=k, m=m)


def _trig(angle: Angle) -> Tuple[float, float]:
    if isinstance(angle, Fraction):
        return cospi_frac(angle), sinpi_frac(angle)
    return float(np.cos(np.pi * angle)), float(np.sin(np.pi * angle))


def x_c4(k: int, r: Angle) -> np.ndarray:
    """
    The k x k rotation block diag(c) + J diag(s) with c_l, s_l the cosine and sine
    of (1-2r)(2l+1)pi/4k. For odd k the two diagonals meet in the center entry c + s.
    """
    if k < 1:
        raise MalformedSpecError(f"Rotation block size must be positive, got {k}.")
    c, s = np.zeros(k), np.zeros(k)
    for l in range(k):
        angle = (1 - 2 * r) * (2 * l + 1) / (4 * k)
        c[l], s[l] = _trig(angle)
    return np.diag(c) + np.flipud(np.diag(s))


def x_s4(k: int, r: Angle) -> np.ndarray:
    """The sine-type block, X_S4(r) = X_C4(1 - r) = diag(c) - J diag(s)."""
    return x_c4(k, 1 - r)


def wang_y(k: int, m: int) -> DirectSum:
    """Y^{2km}_m: m blocks [[X(r), +-J X(1-r)], [X(1-r), -+J X(r)]] with r = (2i+1)/4m."""
    flip = np.flipud(np.eye(k))
    blocks = []
    for i in range(m):
        r = skew_params(i, k, m).r_i
        rotation, complement = x_c4(k, r), x_s4(k, r)
        sign = (-1) ** i
        blocks.append(Dense(
            np.block([[rotation, sign * flip @ complement], [complement, -sign * flip @ rotation]]),
            label=f"Y block {i}",
        ))
    return DirectSum(blocks, label=f"Y^{2 * k * m}_{m}")


def _dft2_ladder(k: int, m: int) -> LinOp:
    """I_k (x) (1 + L^{2(m-1)}_2 (I_{m-1} (x) DFT_2) + 1)."""
    inner = Compose([
        StrideL(2 * (m - 1), 2),
        Tensor(Identity(m - 1), Dense(named_transform(TransformName.DFT, 2), label="DFT_2")),
    ])
    return Tensor(Identity(k), DirectSum([Identity(1), inner, Identity(1)]), label=f"I_{k} (x) DFT_2 ladder")


def wang_factors(k: int, m: int, dct4_k: Optional[LinOp] = None) -> List[LinOp]:
    if k < 1 or m < 1:
        raise MalformedSpecError(f"Wang DCT-IV needs k, m >= 1, got k={k}, m={m}.")
    n = 2 * k * m
    dct4_k = dct4_k or Dense(named_transform(TransformName.DCT_IV, k), label=f"DCT-IV_{k}")
    factors: List[LinOp] = [
        PermK(n, k, label=f"K^{n}_{k}"),
        Tensor(PermK(2 * m, 2), dct4_k, label=f"K^{2 * m}_2 (x) DCT-IV_{k}"),
        wang_y(k, m),
        Tensor(Dense(named_transform(TransformName.DCT_III, m), label=f"DCT-III_{m}"), StrideL(2 * k, 2),
               label=f"DCT-III_{m} (x) L^{2 * k}_2"),
        Transpose(PermK(n, 2 * k), label=f"(K^{n}_{2 * k})^T"),
    ]
    # with m = 1 the ladder is I_k (x) I_2 and is left out
    if m > 1:
        factors.append(_dft2_ladder(k, m))
    factors.append(Transpose(PermK(n, 2 * m), label=f"(K^{n}_{2 * m})^T"))
    return factors


def wang_dct4(k: int, m: int) -> Factorization:
    """General-radix Wang factorization of DCT-IV_{2km}."""
    factors = wang_factors(k, m)
    return Factorization(
        name=f"wang(k={k}, m={m})",
        target=named_transform(TransformName.DCT_IV, 2 * k * m),
        factors=factors,
    )
