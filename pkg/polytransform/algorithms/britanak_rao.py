# polytransform/algorithms/britanak_rao.py

from typing import List, Optional, Tuple

import numpy as np

from ..errors import MalformedSpecError
from ..factorization import Factorization
from ..operators import (
    CircShiftZ, Dense, Diagonal, DirectSum, Identity, LinOp, StrideL, Tensor, TwoSparse,
)
from ..transforms import TransformName, named_transform
from ..utils import cospi, omega, sinpi

Row = List[Tuple[int, complex]]


def _check(k: int, m: int) -> int:
    if k < 1 or m < 1:
        raise MalformedSpecError(f"Britanak-Rao needs k, m >= 1, got k={k}, m={m}.")
    return 2 * k * m


def _x_row(s: int, c: int, k: int, m: int) -> Row:
    n = 2 * k * m
    if s == 0:
        return [(c, 1)]
    if s == m:
        return [((2 * m - 1) * k + c, 1 if c == 0 else -omega(2 * k, c))]

    rho = s if s < m else 2 * m - s
    w, w_inv = omega(2 * m, s), omega(2 * m, -s)
    if c == 0:
        c_entry, d_entry = 1, (w - w_inv) / 2
    else:
        twiddle = omega(n, s * c)
        c_entry, d_entry = twiddle * (w + 1) / 2, twiddle * (w - 1) / 2
    return [(rho * k + c, c_entry), ((m + rho - 1) * k + c, d_entry)]


def britanak_rao_x(k: int, m: int) -> TwoSparse:
    """
    The 2-sparse matrix X^{2km}_m. Row block s (of size k) pairs the C_s block with
    the D_s block; rows m+1..2m-1 reuse the column blocks of rows m-1..1.
    """
    n = _check(k, m)
    rows = [_x_row(s, c, k, m) for s in range(2 * m) for c in range(k)]
    return TwoSparse(n, n, rows, label=f"X^{n}_{m}")


def britanak_rao_diagonal(k: int, m: int) -> Diagonal:
    """D^{2km}_m = I_{m+1} + diag(1/sin((j+1)pi/m)) + I_{k-1} (x) (diag(1/cos(j pi/2m)) + diag(1/sin((j+1)pi/2m)))."""
    n = _check(k, m)
    parts = [np.ones(m + 1), 1 / np.atleast_1d(sinpi(np.arange(1, m), m))]
    if k > 1:
        block = np.concatenate([
            1 / np.atleast_1d(cospi(np.arange(m), 2 * m)),
            1 / np.atleast_1d(sinpi(np.arange(1, m + 1), 2 * m)),
        ])
        parts.append(np.tile(block, k - 1))
    return Diagonal(np.concatenate(parts), label=f"D^{n}_{m}")


def britanak_rao_middle(k: int, m: int, polynomial: bool = False) -> DirectSum:
    """
    DCT-I_{m+1} + DST-I_{m-1} + I_{k-1} (x) (DCT-II_m + DST-II_m).

    With polynomial=True the sine and type-II blocks are their Chebyshev-basis
    (polynomial) forms, which equal the unscaled middle stage multiplied by
    britanak_rao_diagonal(k, m).
    """
    _check(k, m)
    if polynomial:
        dst1, dct2, dst2 = TransformName.POL_DST_I, TransformName.POL_DCT_II, TransformName.POL_DST_II
    else:
        dst1, dct2, dst2 = TransformName.DST_I, TransformName.DCT_II, TransformName.DST_II
    prefix = "pol-" if polynomial else ""

    blocks: List[LinOp] = [
        Dense(named_transform(TransformName.DCT_I, m + 1), label=f"DCT-I_{m + 1}"),
        Dense(named_transform(dst1, m - 1), label=f"{prefix}DST-I_{m - 1}"),
    ]
    if k > 1:
        pair = DirectSum([
            Dense(named_transform(dct2, m), label=f"{prefix}DCT-II_{m}"),
            Dense(named_transform(dst2, m), label=f"{prefix}DST-II_{m}"),
        ])
        blocks.append(Tensor(Identity(k - 1), pair, label=f"I_{k - 1} (x) ({prefix}DCT-II_{m} + {prefix}DST-II_{m})"))
    return DirectSum(blocks, label="DCT-I + DST-I + I (x) (DCT-II + DST-II)")


def _b_first_block(m: int) -> List[Row]:
    rows: List[Row] = [[(0, 1)]]
    rows += [[(b, 1), (2 * m - b, 1)] for b in range(1, m)]
    rows += [[(m, 1)]]
    rows += [[(b, 1), (2 * m - b, -1)] for b in range(1, m)]
    return rows


def _b_repeated_block(m: int) -> List[Row]:
    rows: List[Row] = [[(0, 1), (1, 1)]]
    rows += [[(l + 1, 1), (2 * m - l, 1)] for l in range(1, m)]
    rows += [[(0, -1), (1, 1)]]
    rows += [[(l + 1, 1), (2 * m - l, -1)] for l in range(1, m)]
    return rows


def britanak_rao_b(k: int, m: int) -> TwoSparse:
    """B^{2km}_m: the block pattern (first block + I_{k-1} (x) repeated block) followed by L^{2km}_k."""
    n = _check(k, m)
    rows = _b_first_block(m)
    for b in range(1, k):
        rows += [[(col + 2 * m * b, v) for col, v in row] for row in _b_repeated_block(m)]
    # folding the trailing stride permutation into the column indices keeps B 2-sparse
    perm = StrideL(n, k).permutation()
    return TwoSparse(n, n, [[(int(perm[col]), v) for col, v in row] for row in rows], label=f"B^{n}_{m}")


def britanak_rao_factors(k: int, m: int, dft_k: Optional[LinOp] = None) -> List[LinOp]:
    n = _check(k, m)
    dft_k = dft_k or Dense(named_transform(TransformName.DFT, k), label=f"DFT_{k}")
    shifts: List[LinOp] = [Identity(m), CircShiftZ(m, -1)]
    if k > 1:
        shifts.append(Identity(2 * (k - 1) * m))
    return [
        StrideL(n, k, label=f"L^{n}_{k}"),
        Tensor(Identity(2 * m), dft_k, label=f"I_{2 * m} (x) DFT_{k}"),
        britanak_rao_x(k, m),
        StrideL(n, 2 * m, label=f"L^{n}_{2 * m}"),
        DirectSum(shifts, label=f"I_{m} + Z^-1_{m} + I_{2 * (k - 1) * m}"),
        britanak_rao_diagonal(k, m),
        britanak_rao_middle(k, m),
        britanak_rao_b(k, m),
    ]


def britanak_rao(k: int, m: int) -> Factorization:
    """General-radix Britanak-Rao factorization of DFT_{2km}."""
    n = _check(k, m)
    return Factorization(
        name=f"britanak-rao(k={k}, m={m})",
        target=named_transform(TransformName.DFT, n),
        factors=britanak_rao_factors(k, m),
    )
