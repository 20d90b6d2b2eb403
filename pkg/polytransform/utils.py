# polytransform/utils.py

from fractions import Fraction
from typing import Union

import numpy as np

IntLike = Union[int, np.ndarray]

# cos and sin at the four quarter turns 0, pi/2, pi, 3pi/2
_COS_QUARTER = np.array([1.0, 0.0, -1.0, 0.0])
_SIN_QUARTER = np.array([0.0, 1.0, 0.0, -1.0])


def _trig_pi(num: IntLike, den: int, quarter_table: np.ndarray, func) -> Union[float, np.ndarray]:
    if den <= 0:
        raise ValueError(f"Denominator must be positive, got {den}.")
    shape = np.shape(num)
    reduced = np.atleast_1d(np.asarray(num, dtype=np.int64)).ravel() % (2 * den)
    values = func(np.pi * reduced / den)

    # Multiples of pi/2 are snapped so that zeros and units come out exact.
    on_quarter = (2 * reduced) % den == 0
    if np.any(on_quarter):
        values[on_quarter] = quarter_table[(2 * reduced[on_quarter]) // den]

    values = values.reshape(shape)
    return float(values) if shape == () else values


def cospi(num: IntLike, den: int = 1) -> Union[float, np.ndarray]:
    """
    Computes cos(num * pi / den) for integer `num` (scalar or array).

    Args:
        num: Integer numerator, or an integer array of numerators.
        den: Positive integer denominator shared by all numerators.

    Returns:
        A float for scalar input, otherwise an array shaped like `num`.
    """
    return _trig_pi(num, den, _COS_QUARTER, np.cos)


def sinpi(num: IntLike, den: int = 1) -> Union[float, np.ndarray]:
    """Computes sin(num * pi / den); see `cospi`."""
    return _trig_pi(num, den, _SIN_QUARTER, np.sin)


def cospi_frac(q: Fraction) -> float:
    return cospi(q.numerator, q.denominator)


def sinpi_frac(q: Fraction) -> float:
    return sinpi(q.numerator, q.denominator)


def omega(n: int, e: IntLike) -> Union[complex, np.ndarray]:
    """
    The root of unity omega_n^e with omega_n = exp(-2*pi*i/n).

    Args:
        n: The order of the root.
        e: Integer exponent, or an integer array of exponents.

    Returns:
        A complex scalar for scalar input, otherwise a complex array.
    """
    e = np.asarray(e, dtype=np.int64)
    value = cospi(2 * e, n) - 1j * np.asarray(sinpi(2 * e, n))
    return complex(value) if np.ndim(value) == 0 else value


def smallest_prime_factor(n: int) -> int:
    """Returns the smallest prime dividing n, or n itself when n <= 1."""
    if n <= 1:
        return n
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def relative_error(actual: np.ndarray, expected: np.ndarray) -> float:
    """Relative Frobenius error, falling back to the absolute error for a zero target."""
    scale = np.linalg.norm(expected)
    diff = np.linalg.norm(np.asarray(actual) - np.asarray(expected))
    return float(diff / scale) if scale > 0 else float(diff)
