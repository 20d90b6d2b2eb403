# polytransform/transforms.py

import logging
from enum import Enum
from typing import Callable, Dict, Iterable, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .chebyshev import ChebKind, MonomialPoly, cheb_eval, cheb_zeros
from .config import DEFAULT_CONFIG
from .errors import DimensionMismatchError, MalformedSpecError, UnknownTransformError
from .utils import cospi, omega, sinpi


# --- Domain Types ---

class ChebyshevTerm(BaseModel):
    """A single Chebyshev polynomial C_degree of the given kind, used as a basis element."""
    model_config = ConfigDict(frozen=True)

    kind: ChebKind
    degree: int = Field(..., ge=0)

    def __call__(self, x):
        return cheb_eval(self.kind, self.degree, x)


Evaluator = Union[MonomialPoly, ChebyshevTerm]


class BasisFamily(str, Enum):
    """Named basis families, as they appear in spec files."""
    MONOMIAL = "monomial"
    CHEBYSHEV_T = "chebyshev-T"
    CHEBYSHEV_U = "chebyshev-U"
    CHEBYSHEV_V = "chebyshev-V"
    CHEBYSHEV_W = "chebyshev-W"

    def basis(self, n: int) -> "PolyBasis":
        if self is BasisFamily.MONOMIAL:
            return PolyBasis.monomials(n)
        return PolyBasis.chebyshev(ChebKind(self.value[-1]), n)


class PolyBasis(BaseModel):
    """An ordered basis p_0 ... p_{n-1} of C[x]/p(x)."""
    model_config = ConfigDict(frozen=True)

    evaluators: Tuple[Evaluator, ...] = Field(..., min_length=1)

    def __len__(self) -> int:
        return len(self.evaluators)

    @classmethod
    def monomials(cls, n: int) -> "PolyBasis":
        return cls(evaluators=tuple(MonomialPoly.monomial(l) for l in range(n)))

    @classmethod
    def chebyshev(cls, kind: ChebKind, n: int) -> "PolyBasis":
        return cls(evaluators=tuple(ChebyshevTerm(kind=kind, degree=l) for l in range(n)))

    @classmethod
    def from_coefficients(cls, rows: Iterable[Sequence[complex]]) -> "PolyBasis":
        return cls(evaluators=tuple(MonomialPoly(coeffs=tuple(complex(c) for c in row)) for row in rows))

    def evaluate(self, points) -> np.ndarray:
        """Returns the len(points) x n matrix [p_l(points[k])]."""
        points = np.asarray(points, dtype=complex).ravel()
        if not len(points):
            return np.zeros((0, len(self)), dtype=complex)
        return np.column_stack([np.asarray(p(points)) for p in self.evaluators])

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.evaluators)

    def coefficient_matrix(self) -> np.ndarray:
        """The n x n matrix whose column l holds the monomial coefficients of p_l; monomial bases only."""
        n = len(self)
        matrix = np.zeros((n, n), dtype=complex)
        for l, p in enumerate(self.evaluators):
            coeffs = np.asarray(p.coeffs[:n], dtype=complex)
            matrix[:len(coeffs), l] = coeffs
        return matrix

    def is_independent(self) -> bool:
        """
        Whether the n elements are linearly independent polynomials of degree < n.

        Coefficient bases are checked through the rank of their column-normalized
        coefficient matrix; a single Chebyshev family is independent iff its
        degrees are distinct. Mixed bases fall back to evaluation at perturbed
        Chebyshev zeros, again with normalized columns.
        """
        n = len(self)
        if any(d < 0 or d >= n for d in self.degrees):
            return False

        if all(isinstance(p, MonomialPoly) for p in self.evaluators):
            matrix = self.coefficient_matrix()
        elif all(isinstance(p, ChebyshevTerm) for p in self.evaluators) and len({p.kind for p in self.evaluators}) == 1:
            return len(set(self.degrees)) == n
        else:
            matrix = self.evaluate(cheb_zeros(ChebKind.FIRST, n) * 0.999 + 0.001j)

        matrix = matrix / np.linalg.norm(matrix, axis=0)
        singular_values = scipy.linalg.svdvals(matrix)
        return bool(singular_values[-1] > DEFAULT_CONFIG.rank_rel_tol * singular_values[0])


class SamplePoints(BaseModel):
    """The list alpha of pairwise distinct sample points."""
    model_config = ConfigDict(frozen=True)

    alpha: Tuple[complex, ...]

    @model_validator(mode="after")
    def _check_distinct(self) -> "SamplePoints":
        points = np.asarray(self.alpha, dtype=complex)
        if len(points) > 1:
            gaps = np.abs(points[:, None] - points[None, :])
            np.fill_diagonal(gaps, np.inf)
            if gaps.min() <= DEFAULT_CONFIG.distinct_rel_tol * np.abs(points).max():
                raise ValueError("Sample points must be pairwise distinct.")
        return self

    def __len__(self) -> int:
        return len(self.alpha)

    @property
    def points(self) -> np.ndarray:
        return np.asarray(self.alpha, dtype=complex)

    @classmethod
    def from_array(cls, values) -> "SamplePoints":
        return cls(alpha=tuple(complex(v) for v in np.asarray(values).ravel()))

    @classmethod
    def roots_of_unity(cls, n: int) -> "SamplePoints":
        """omega_n^k for k < n, exact at quarter turns."""
        return cls.from_array(np.atleast_1d(omega(n, np.arange(n))))

    @classmethod
    def chebyshev_zeros(cls, kind: ChebKind, n: int) -> "SamplePoints":
        return cls.from_array(cheb_zeros(kind, n))


class ScaleVector(BaseModel):
    """Per-row scale factors c_k of a scaled polynomial transform."""
    model_config = ConfigDict(frozen=True)

    c: Tuple[complex, ...]

    @field_validator("c")
    @classmethod
    def _check_nonzero(cls, value: Tuple[complex, ...]) -> Tuple[complex, ...]:
        if any(abs(v) == 0 for v in value):
            raise ValueError("Scale factors must be nonzero.")
        return value

    @classmethod
    def from_array(cls, values) -> "ScaleVector":
        return cls(c=tuple(complex(v) for v in np.asarray(values).ravel()))


class TransformName(str, Enum):
    DFT = "dft"
    DCT_I = "dct1"
    DST_I = "dst1"
    DCT_II = "dct2"
    DST_II = "dst2"
    DCT_III = "dct3"
    DST_III = "dst3"
    DCT_IV = "dct4"
    DST_IV = "dst4"
    POL_DST_I = "pol-dst1"
    POL_DCT_II = "pol-dct2"
    POL_DST_II = "pol-dst2"
    POL_DST_III = "pol-dst3"
    POL_DCT_IV = "pol-dct4"


# --- Transform Builders ---

def polynomial_transform(b: PolyBasis, alpha: SamplePoints) -> np.ndarray:
    """
    Builds PT_{b,alpha}, the matrix whose (k, l) entry is p_l(alpha_k).

    Args:
        b: The polynomial basis, one evaluator per column.
        alpha: The sample points, one per row.

    Returns:
        An n x n complex matrix.
    """
    if len(b) != len(alpha):
        raise MalformedSpecError(f"Basis has {len(b)} elements but there are {len(alpha)} sample points.")
    return b.evaluate(alpha.points)


def scaled_polynomial_transform(b: PolyBasis, alpha: SamplePoints, c: ScaleVector) -> np.ndarray:
    """diag(1/c_0, ..., 1/c_{n-1}) . PT_{b,alpha}"""
    if len(c.c) != len(alpha):
        raise MalformedSpecError(f"Scale vector has {len(c.c)} entries but there are {len(alpha)} sample points.")
    scale = 1.0 / np.asarray(c.c, dtype=complex)
    return scale[:, None] * polynomial_transform(b, alpha)


def _grid(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.meshgrid(np.arange(n), np.arange(n), indexing="ij")


def _dft(n: int) -> np.ndarray:
    k, l = _grid(n)
    return np.asarray(omega(n, (k * l) % n), dtype=complex).reshape(n, n)


def _dct1(n: int) -> np.ndarray:
    if n == 1:
        return np.ones((1, 1))
    k, l = _grid(n)
    return cospi(k * l, n - 1)


def _dst1(n: int) -> np.ndarray:
    k, l = _grid(n)
    return sinpi((k + 1) * (l + 1), n + 1) if n else np.zeros((0, 0))


def _dct2(n: int) -> np.ndarray:
    k, l = _grid(n)
    return cospi(k * (2 * l + 1), 2 * n)


def _dst2(n: int) -> np.ndarray:
    k, l = _grid(n)
    return sinpi((k + 1) * (2 * l + 1), 2 * n)


def _dct3(n: int) -> np.ndarray:
    k, l = _grid(n)
    return cospi((2 * k + 1) * l, 2 * n)


def _dst3(n: int) -> np.ndarray:
    k, l = _grid(n)
    return sinpi((2 * k + 1) * (l + 1), 2 * n)


def _dct4(n: int) -> np.ndarray:
    k, l = _grid(n)
    return cospi((2 * k + 1) * (2 * l + 1), 4 * n)


def _dst4(n: int) -> np.ndarray:
    k, l = _grid(n)
    return sinpi((2 * k + 1) * (2 * l + 1), 4 * n)


def _chebyshev_at(kind: ChebKind, points: np.ndarray) -> np.ndarray:
    n = len(points)
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    return polynomial_transform(PolyBasis.chebyshev(kind, n), SamplePoints.from_array(points))


def _pol_dst1(n: int) -> np.ndarray:
    return _chebyshev_at(ChebKind.SECOND, np.atleast_1d(cospi(np.arange(1, n + 1), n + 1)))


def _pol_dct2(n: int) -> np.ndarray:
    return _chebyshev_at(ChebKind.THIRD, np.atleast_1d(cospi(np.arange(n), n)))


def _pol_dst2(n: int) -> np.ndarray:
    return _chebyshev_at(ChebKind.FOURTH, np.atleast_1d(cospi(np.arange(1, n + 1), n)))


def _pol_dst3(n: int) -> np.ndarray:
    return _chebyshev_at(ChebKind.SECOND, np.atleast_1d(cospi(2 * np.arange(n) + 1, 2 * n)))


def _pol_dct4(n: int) -> np.ndarray:
    return _chebyshev_at(ChebKind.THIRD, cheb_zeros(ChebKind.FIRST, n))


_BUILDERS: Dict[TransformName, Callable[[int], np.ndarray]] = {
    TransformName.DFT: _dft,
    TransformName.DCT_I: _dct1,
    TransformName.DST_I: _dst1,
    TransformName.DCT_II: _dct2,
    TransformName.DST_II: _dst2,
    TransformName.DCT_III: _dct3,
    TransformName.DST_III: _dst3,
    TransformName.DCT_IV: _dct4,
    TransformName.DST_IV: _dst4,
    TransformName.POL_DST_I: _pol_dst1,
    TransformName.POL_DCT_II: _pol_dct2,
    TransformName.POL_DST_II: _pol_dst2,
    TransformName.POL_DST_III: _pol_dst3,
    TransformName.POL_DCT_IV: _pol_dct4,
}

# Only DST-I (and its polynomial form) may be empty; it shows up as DST-I_{m-1} with m = 1.
_EMPTY_ALLOWED = {TransformName.DST_I, TransformName.POL_DST_I}


def named_transform(name: Union[TransformName, str], n: int) -> np.ndarray:
    """
    Builds a named transform of size n as a dense complex matrix.

    Sizes follow the indexing used by the factorizations: DCT-I of size n samples
    cos(k*l*pi/(n-1)), DST-I of size n samples sin((k+1)(l+1)pi/(n+1)).

    Args:
        name: A TransformName or its string value (e.g. "dct4").
        n: The transform size.

    Returns:
        An n x n complex matrix.
    """
    try:
        name = TransformName(name)
    except ValueError:
        raise UnknownTransformError(f"Unknown transform '{name}'. Known: {', '.join(t.value for t in TransformName)}.")

    minimum = 0 if name in _EMPTY_ALLOWED else 1
    if n < minimum:
        raise MalformedSpecError(f"Size of {name.value} must be at least {minimum}, got {n}.")

    logging.debug(f"Building {name.value} of size {n}")
    return np.asarray(_BUILDERS[name](n), dtype=complex).reshape(n, n)


def apply_dense(m: np.ndarray, x) -> np.ndarray:
    """The O(n^2) matrix-vector product every fast algorithm is checked against."""
    x = np.asarray(x, dtype=complex)
    if x.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"Vector of length {x.shape[0]} does not match a matrix with {m.shape[1]} columns.")
    return m @ x
