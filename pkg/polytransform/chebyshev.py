# polytransform/chebyshev.py

from enum import Enum
from typing import Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .utils import cospi

ComplexLike = Union[complex, float, int, np.ndarray]


class ChebKind(str, Enum):
    """The four Chebyshev families. Values are the usual one-letter names."""
    FIRST = "T"
    SECOND = "U"
    THIRD = "V"
    FOURTH = "W"

    @property
    def seed_linear(self) -> Tuple[float, float]:
        """(slope, offset) of the degree-one seed C_1(x) = slope*x + offset; C_0 is always 1."""
        return _SEEDS[self]


_SEEDS = {
    ChebKind.FIRST: (1.0, 0.0),
    ChebKind.SECOND: (2.0, 0.0),
    ChebKind.THIRD: (2.0, -1.0),
    ChebKind.FOURTH: (2.0, 1.0),
}


class MonomialPoly(BaseModel):
    """
    A polynomial stored by its monomial coefficients; coeffs[l] multiplies x^l.
    The empty tuple is the zero polynomial.
    """
    model_config = ConfigDict(frozen=True)

    coeffs: Tuple[complex, ...] = Field(default=(), description="Coefficient of x^l at index l.")

    @property
    def degree(self) -> int:
        """Highest index with a nonzero coefficient; -1 for the zero polynomial."""
        for index in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[index] != 0:
                return index
        return -1

    @classmethod
    def monomial(cls, degree: int) -> "MonomialPoly":
        return cls(coeffs=(0,) * degree + (1,))

    def __call__(self, x: ComplexLike) -> ComplexLike:
        return poly_eval(self, x)


def _as_complex(x: ComplexLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=complex)
    return arr, arr.ndim == 0


def cheb_eval(kind: ChebKind, n: int, x: ComplexLike) -> ComplexLike:
    """
    Evaluates the Chebyshev polynomial C_n of the given kind at x.

    The forward recurrence C_{k+1} = 2x C_k - C_{k-1} is used for every kind, so
    complex arguments behave exactly like real ones. Negative degrees follow the
    symmetries T_{-n} = T_n, U_{-n} = -U_{n-2}, V_{-n} = V_{n-1} and
    W_{-n} = -W_{n-1}; U_{-1} is 0.

    Args:
        kind: Which Chebyshev family to evaluate.
        n: Signed degree.
        x: A complex scalar or an array of points.

    Returns:
        A complex scalar for scalar input, otherwise a complex array shaped like x.
    """
    kind = ChebKind(kind)
    if n < 0:
        p = -n
        if kind is ChebKind.FIRST:
            return cheb_eval(kind, p, x)
        if kind is ChebKind.SECOND:
            if p == 1:
                return cheb_eval(kind, 0, x) * 0
            return -cheb_eval(kind, p - 2, x)
        if kind is ChebKind.THIRD:
            return cheb_eval(kind, p - 1, x)
        return -cheb_eval(kind, p - 1, x)

    points, scalar = _as_complex(x)
    slope, offset = kind.seed_linear
    previous = np.ones_like(points)
    current = slope * points + offset
    if n == 0:
        result = previous
    else:
        for _ in range(n - 1):
            previous, current = current, 2 * points * current - previous
        result = current
    return complex(result) if scalar else result


def cheb_zeros(kind: ChebKind, n: int) -> np.ndarray:
    """
    Returns the n zeros of C_n in order of increasing k (hence decreasing value).
    T: cos((2k+1)pi/2n), U: cos((k+1)pi/(n+1)), V: cos((2k+1)pi/(2n+1)),
    W: cos((2k+2)pi/(2n+1)). n = 0 gives an empty array.
    """
    kind = ChebKind(kind)
    if n < 0:
        raise ValueError(f"Number of zeros must be non-negative, got {n}.")
    k = np.arange(n)
    if kind is ChebKind.FIRST:
        return np.atleast_1d(cospi(2 * k + 1, 2 * n)) if n else np.zeros(0)
    if kind is ChebKind.SECOND:
        return np.atleast_1d(cospi(k + 1, n + 1))
    if kind is ChebKind.THIRD:
        return np.atleast_1d(cospi(2 * k + 1, 2 * n + 1))
    return np.atleast_1d(cospi(2 * k + 2, 2 * n + 1))


def poly_eval(p: MonomialPoly, x: ComplexLike) -> ComplexLike:
    """Horner evaluation of sum(coeffs[l] * x^l); works on scalars and arrays."""
    points, scalar = _as_complex(x)
    result = np.zeros_like(points)
    for coefficient in reversed(p.coeffs):
        result = result * points + coefficient
    return complex(result) if scalar else result
