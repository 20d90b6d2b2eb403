# polytransform/algorithms/cooley_tukey.py

from typing import List, Optional

from ..errors import MalformedSpecError
from ..factorization import Factorization
from ..operators import Dense, Identity, LinOp, StrideL, Tensor, TwiddleT
from ..transforms import TransformName, named_transform


def cooley_tukey_factors(k: int, m: int, dft_k: Optional[LinOp] = None, dft_m: Optional[LinOp] = None) -> List[LinOp]:
    """
    The four factors L^n_k (I_m (x) DFT_k) T^n_k (DFT_m (x) I_k) of DFT_n, n = k*m.
    The inner DFTs default to dense catalog matrices.
    """
    if k < 1 or m < 1:
        raise MalformedSpecError(f"Cooley-Tukey needs k, m >= 1, got k={k}, m={m}.")
    n = k * m
    dft_k = dft_k or Dense(named_transform(TransformName.DFT, k), label=f"DFT_{k}")
    dft_m = dft_m or Dense(named_transform(TransformName.DFT, m), label=f"DFT_{m}")
    return [
        StrideL(n, k, label=f"L^{n}_{k}"),
        Tensor(Identity(m), dft_k, label=f"I_{m} (x) DFT_{k}"),
        TwiddleT(n, k, label=f"T^{n}_{k}"),
        Tensor(dft_m, Identity(k), label=f"DFT_{m} (x) I_{k}"),
    ]


def cooley_tukey(k: int, m: int) -> Factorization:
    """General-radix Cooley-Tukey factorization of DFT_{km}."""
    return Factorization(
        name=f"cooley-tukey(k={k}, m={m})",
        target=named_transform(TransformName.DFT, k * m),
        factors=cooley_tukey_factors(k, m),
    )
