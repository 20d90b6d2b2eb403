# polytransform/induction.py

import logging
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .chebyshev import MonomialPoly, poly_eval
from .config import DEFAULT_CONFIG, NumericConfig
from .errors import DecompositionError, MalformedSpecError, TransversalError
from .factorization import Factorization
from .operators import ColumnConcat, Compose, Dense, Diagonal, DirectSum, Identity, StrideL, Tensor, TwoSparse
from .transforms import PolyBasis, SamplePoints, polynomial_transform


# --- Domain Types ---

class SubalgebraSpectrum(BaseModel):
    """
    The distinct images beta of the sample points under r(x), in order of first
    occurrence, with index_map[k] = j meaning r(alpha_k) = beta_j.
    """
    model_config = ConfigDict(frozen=True)

    beta: Tuple[complex, ...]
    index_map: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.beta)

    def q_coefficients(self) -> Tuple[complex, ...]:
        """Monomial coefficients (lowest degree first) of q(y) = prod_j (y - beta_j)."""
        return tuple(complex(c) for c in np.poly(np.asarray(self.beta))[::-1])

    def membership(self) -> np.ndarray:
        """The n x m 0/1 matrix with (k, j) = 1 iff r(alpha_k) = beta_j."""
        matrix = np.zeros((len(self.index_map), len(self.beta)))
        matrix[np.arange(len(self.index_map)), self.index_map] = 1
        return matrix


class CosetSpectrum(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta_prime: Tuple[complex, ...]
    beta_indices: Tuple[int, ...] = Field(..., description="Position of each beta_prime entry in beta.")

    @property
    def m_ell(self) -> int:
        return len(self.beta_prime)


class InductionSpec(BaseModel):
    """Everything an induction factorization needs: points, basis, generator, transversal, coset bases."""
    model_config = ConfigDict(frozen=True)

    alpha: SamplePoints
    b: PolyBasis
    r: MonomialPoly
    transversal: Tuple[MonomialPoly, ...] = Field(..., min_length=1)
    coset_bases: Tuple[Optional[PolyBasis], ...] = ()

    @model_validator(mode="after")
    def _check_sizes(self) -> "InductionSpec":
        if len(self.b) != len(self.alpha):
            raise ValueError(f"Basis has {len(self.b)} elements but there are {len(self.alpha)} sample points.")
        if len(self.coset_bases) > len(self.transversal):
            raise ValueError("More coset bases than transversal elements.")
        if not self.b.is_independent():
            raise ValueError("The basis must consist of linearly independent polynomials of degree < n.")
        for ell, basis in enumerate(self.coset_bases):
            if basis is not None and not basis.is_independent():
                raise ValueError(f"The basis of coset {ell} is not linearly independent with degrees below its size.")
        return self

    def coset_basis(self, ell: int, m: int) -> PolyBasis:
        """The basis of coset ell, defaulting to the monomials 1, y, ..., y^(m-1)."""
        basis = self.coset_bases[ell] if ell < len(self.coset_bases) else None
        if basis is None:
            return PolyBasis.monomials(m)
        if len(basis) != m:
            raise MalformedSpecError(f"Coset {ell} has dimension {m} but its basis has {len(basis)} elements.")
        return basis


class TransversalReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    is_transversal: bool
    n: int
    dimensions: Tuple[int, ...] = Field(..., description="dim t_l(x)B for every transversal element.")
    total_dimension: int
    rank: int
    smallest_singular_value: float

    def summary(self) -> str:
        return (
            f"sum of coset dimensions {self.total_dimension} (n = {self.n}), "
            f"rank {self.rank}, smallest singular value {self.smallest_singular_value:.3e}"
        )


# --- Helpers ---

def _singular_values(matrix: np.ndarray) -> np.ndarray:
    if 0 in matrix.shape:
        return np.zeros(0)
    return scipy.linalg.svdvals(matrix)


def numerical_rank(matrix: np.ndarray, config: NumericConfig = DEFAULT_CONFIG) -> int:
    """Number of singular values above rank_rel_tol * sigma_max."""
    sigma = _singular_values(np.asarray(matrix, dtype=complex))
    if not len(sigma) or sigma[0] == 0:
        return 0
    return int(np.count_nonzero(sigma > config.rank_rel_tol * sigma[0]))


def _nonzero_mask(values: np.ndarray, config: NumericConfig) -> np.ndarray:
    scale = 1 + (np.abs(values).max() if len(values) else 0)
    return np.abs(values) > config.dedup_rel_tol * scale


def _power_columns(values: np.ndarray, count: int) -> np.ndarray:
    """The len(values) x count matrix [values_k ** j]."""
    return np.vander(values, count, increasing=True) if count else np.zeros((len(values), 0), dtype=complex)


# --- Spectra ---

def subalgebra_spectrum(r: MonomialPoly, alpha: SamplePoints, config: NumericConfig = DEFAULT_CONFIG) -> SubalgebraSpectrum:
    """
    Deduplicates the images r(alpha). Two images are equal when they differ by at
    most dedup_rel_tol * (1 + max|r(alpha)|).

    Args:
        r: The generator of the subalgebra.
        alpha: The sample points.
        config: Numerical tolerances.

    Returns:
        The spectrum beta, whose length is the dimension of the subalgebra.
    """
    images = np.atleast_1d(poly_eval(r, alpha.points))
    tol = config.dedup_rel_tol * (1 + np.abs(images).max())
    beta: List[complex] = []
    index_map: List[int] = []
    for value in images:
        match = next((j for j, b in enumerate(beta) if abs(value - b) <= tol), None)
        if match is None:
            beta.append(complex(value))
            match = len(beta) - 1
        index_map.append(match)
    logging.debug(f"Subalgebra spectrum has {len(beta)} points for n = {len(images)}")
    return SubalgebraSpectrum(beta=tuple(beta), index_map=tuple(index_map))


def subalgebra_rank_check(r: MonomialPoly, alpha: SamplePoints, config: NumericConfig = DEFAULT_CONFIG) -> int:
    """Numerical rank of the n x n matrix [r(alpha_k)^l]; equals the subalgebra dimension."""
    images = np.atleast_1d(poly_eval(r, alpha.points))
    # Rescaling the images scales column l by s^l, which leaves the rank unchanged.
    scale = np.abs(images).max()
    if scale > 0:
        images = images / scale
    return numerical_rank(_power_columns(images, len(images)), config)


def coset_spectrum(
    t: MonomialPoly,
    r: MonomialPoly,
    alpha: SamplePoints,
    config: NumericConfig = DEFAULT_CONFIG,
    spectrum: Optional[SubalgebraSpectrum] = None,
) -> CosetSpectrum:
    """
    The part of beta that survives multiplication by t(x): beta_j is kept iff some
    alpha_k with r(alpha_k) = beta_j has t(alpha_k) != 0. Its length is dim t(x)B.
    """
    spectrum = spectrum or subalgebra_spectrum(r, alpha, config)
    keep = _nonzero_mask(np.atleast_1d(poly_eval(t, alpha.points)), config)
    indices = sorted({spectrum.index_map[k] for k in np.flatnonzero(keep)})
    return CosetSpectrum(
        beta_prime=tuple(spectrum.beta[j] for j in indices),
        beta_indices=tuple(indices),
    )


# --- Transversals ---

def transversal_matrix(spec: InductionSpec, config: NumericConfig = DEFAULT_CONFIG) -> np.ndarray:
    """The block row (D_0 B_0 | ... | D_{L-1} B_{L-1}) with D_l = diag(t_l(alpha)) and B_l = [r(alpha_k)^j]."""
    points = spec.alpha.points
    images = np.atleast_1d(poly_eval(spec.r, points))
    spectrum = subalgebra_spectrum(spec.r, spec.alpha, config)
    blocks = []
    for t in spec.transversal:
        m_ell = coset_spectrum(t, spec.r, spec.alpha, config, spectrum).m_ell
        t_values = np.atleast_1d(poly_eval(t, points))
        blocks.append(t_values[:, None] * _power_columns(images, m_ell))
    return np.hstack(blocks)


def transversal_check(spec: InductionSpec, config: NumericConfig = DEFAULT_CONFIG) -> TransversalReport:
    """
    Decides whether spec.transversal is a transversal of <r(x)> in the algebra:
    the coset dimensions must add up to n and the block row must have full rank.
    """
    n = len(spec.alpha)
    spectrum = subalgebra_spectrum(spec.r, spec.alpha, config)
    dimensions = tuple(coset_spectrum(t, spec.r, spec.alpha, config, spectrum).m_ell for t in spec.transversal)
    matrix = transversal_matrix(spec, config)
    sigma = _singular_values(matrix)
    rank = numerical_rank(matrix, config)
    total = sum(dimensions)
    report = TransversalReport(
        is_transversal=(total == n and rank == n),
        n=n,
        dimensions=dimensions,
        total_dimension=total,
        rank=rank,
        smallest_singular_value=float(sigma[-1]) if len(sigma) else 0.0,
    )
    logging.debug(f"Transversal check: {report.summary()}")
    return report


def lagrange_transversal(alpha: SamplePoints) -> Tuple[MonomialPoly, ...]:
    """The interpolating polynomials t_l with t_l(alpha_k) = 1 if k == l else 0."""
    n = len(alpha)
    vandermonde = _power_columns(alpha.points, n)
    coefficients = scipy.linalg.solve(vandermonde, np.eye(n, dtype=complex))
    return tuple(MonomialPoly(coeffs=tuple(complex(c) for c in coefficients[:, ell])) for ell in range(n))


def _require_transversal(spec: InductionSpec, config: NumericConfig) -> TransversalReport:
    report = transversal_check(spec, config)
    if not report.is_transversal:
        raise TransversalError(f"The polynomials do not form a transversal: {report.summary()}", report)
    return report


def _base_change(target: np.ndarray, coset_transform: np.ndarray, config: NumericConfig, warnings: List[str]) -> np.ndarray:
    condition = np.linalg.cond(coset_transform)
    if condition > config.condition_warning:
        message = f"Base change is ill-conditioned (condition number {condition:.3e})."
        logging.warning(message)
        warnings.append(message)
    return scipy.linalg.solve(coset_transform, target)


# --- Factorizations ---

def induction_factorize(spec: InductionSpec, config: NumericConfig = DEFAULT_CONFIG) -> Factorization:
    """
    Factors PT_{b,alpha} through the induction from <r(x)>.

    The three factors are the M-part (D_0 M_0 | ... | D_{L-1} M_{L-1}), the direct
    sum of the coset transforms PT_{b^(l), beta^(l)}, and the base change B that
    converts b into the concatenated coset basis t_l(x) b^(l)(r(x)).

    Args:
        spec: A validated induction input.
        config: Numerical tolerances.

    Returns:
        A Factorization with factors labelled "M-part", "PT direct sum" and "base change B".

    Raises:
        TransversalError: If the transversal check fails.
    """
    _require_transversal(spec, config)
    points = spec.alpha.points
    n = len(points)
    images = np.atleast_1d(poly_eval(spec.r, points))
    spectrum = subalgebra_spectrum(spec.r, spec.alpha, config)

    m_blocks, coset_transforms, coset_columns = [], [], []
    for ell, t in enumerate(spec.transversal):
        coset = coset_spectrum(t, spec.r, spec.alpha, config, spectrum)
        if not coset.m_ell:
            continue
        position = {j: i for i, j in enumerate(coset.beta_indices)}
        membership = TwoSparse(
            n, coset.m_ell,
            [[(position[spectrum.index_map[k]], 1)] if spectrum.index_map[k] in position else [] for k in range(n)],
            label=f"M_{ell}",
        )
        t_values = np.atleast_1d(poly_eval(t, points))
        m_blocks.append(Compose([Diagonal(t_values, label=f"D_{ell}"), membership]))

        basis = spec.coset_basis(ell, coset.m_ell)
        coset_transforms.append(Dense(
            polynomial_transform(basis, SamplePoints(alpha=coset.beta_prime)),
            label=f"PT coset {ell}",
        ))
        coset_columns.append(t_values[:, None] * basis.evaluate(images))

    warnings: List[str] = []
    target = polynomial_transform(spec.b, spec.alpha)
    base_change = _base_change(target, np.hstack(coset_columns), config, warnings)

    logging.info(f"Induction factorization of size {n} with coset dimensions {[c.cols for c in coset_transforms]}")
    return Factorization(
        name=f"induction(n={n}, L={len(spec.transversal)})",
        target=target,
        factors=[
            ColumnConcat(m_blocks, label="M-part"),
            DirectSum(coset_transforms, label="PT direct sum"),
            Dense(base_change, label="base change B"),
        ],
        warnings=warnings,
    )


def ones_count_check(spec: InductionSpec, config: NumericConfig = DEFAULT_CONFIG) -> bool:
    """
    Checks the counting properties of the membership matrix M: it holds exactly n
    ones, and column j (with c_j ones) appears in exactly c_j of the coset blocks.
    """
    _require_transversal(spec, config)
    spectrum = subalgebra_spectrum(spec.r, spec.alpha, config)
    membership = spectrum.membership()
    n, m = membership.shape
    if np.count_nonzero(membership == 1) != n or np.count_nonzero(membership == 0) != n * (m - 1):
        return False

    appearances = np.zeros(m, dtype=int)
    for t in spec.transversal:
        appearances[list(coset_spectrum(t, spec.r, spec.alpha, config, spectrum).beta_indices)] += 1
    return bool(np.array_equal(appearances, membership.sum(axis=0).astype(int)))


def _roots_of(r: MonomialPoly, shift: complex) -> np.ndarray:
    """Roots of r(x) - shift."""
    coeffs = np.array(r.coeffs[:r.degree + 1], dtype=complex)
    coeffs[0] -= shift
    return np.roots(coeffs[::-1])


def decomposition_factorize(
    q: MonomialPoly,
    r: MonomialPoly,
    b: PolyBasis,
    c: PolyBasis,
    t: PolyBasis,
    alpha: Optional[SamplePoints] = None,
    config: NumericConfig = DEFAULT_CONFIG,
) -> Factorization:
    """
    Factors PT_{b,alpha} for p(x) = q(r(x)) as

        P^-1 . (+)_j PT_{t, gamma^(j)} . L^n_m . (I_k (x) PT_{c, beta}) . B

    where beta are the roots of q, gamma^(j) the roots of r(x) - beta_j, k = deg r,
    m = deg q and P sends the concatenated gamma lists to alpha order. When alpha is
    omitted the concatenated gamma lists are used as the sample points.
    """
    k, m = r.degree, q.degree
    if k < 1 or m < 1:
        raise MalformedSpecError("Both q and r must have degree at least 1.")
    n = k * m
    if len(b) != n or len(c) != m or len(t) != k:
        raise MalformedSpecError(
            f"Expected |b| = {n}, |c| = {m} and |t| = {k}; got {len(b)}, {len(c)} and {len(t)}."
        )
    for name, basis in (("b", b), ("c", c), ("t", t)):
        if not basis.is_independent():
            raise MalformedSpecError(f"Basis {name} is not linearly independent with degrees below {len(basis)}.")

    if alpha is None:
        beta = np.atleast_1d(np.roots(np.array(q.coeffs[:m + 1], dtype=complex)[::-1]))
        gammas = [_roots_of(r, value) for value in beta]
        alpha = SamplePoints.from_array(np.concatenate(gammas))
        order = np.arange(n)
    else:
        if len(alpha) != n:
            raise MalformedSpecError(f"Expected {n} sample points for deg q * deg r = {n}, got {len(alpha)}.")
        residual = np.abs(np.atleast_1d(poly_eval(q, poly_eval(r, alpha.points))))
        scale = 1 + np.abs(np.asarray(q.coeffs)).max()
        if residual.max() > config.derive_tol * scale * n:
            raise DecompositionError("The sample points are not the roots of q(r(x)).")
        spectrum = subalgebra_spectrum(r, alpha, config)
        groups = [[kk for kk, j in enumerate(spectrum.index_map) if j == jj] for jj in range(spectrum.dimension)]
        if spectrum.dimension != m or any(len(group) != k for group in groups):
            raise DecompositionError(
                f"The sample points split into fibers of sizes {[len(g) for g in groups]}; "
                f"expected {m} fibers of size {k}."
            )
        beta = np.asarray(spectrum.beta)
        order = np.array([kk for group in groups for kk in group])
        gammas = [alpha.points[group] for group in groups]

    # row a of P^-1 picks the gamma-ordered entry that holds alpha_a
    gamma_position = np.empty(n, dtype=int)
    gamma_position[order] = np.arange(n)
    unpermute = TwoSparse(n, n, [[(gamma_position[a], 1)] for a in range(n)], label="P^-1")

    fiber_transforms = DirectSum(
        [Dense(polynomial_transform(t, SamplePoints.from_array(g)), label=f"PT_t fiber {j}") for j, g in enumerate(gammas)],
        label="PT fiber sum",
    )
    spectral = Tensor(Identity(k), Dense(polynomial_transform(c, SamplePoints.from_array(beta)), label="PT_c"),
                      label="I_k (x) PT_c")

    # b' is ordered l-major: column l*m + i holds t_l(x) c_i(r(x))
    points = alpha.points
    images = np.atleast_1d(poly_eval(r, points))
    t_values, c_values = t.evaluate(points), c.evaluate(images)
    coset_transform = (t_values[:, :, None] * c_values[:, None, :]).reshape(n, n)

    warnings: List[str] = []
    target = polynomial_transform(b, alpha)
    base_change = _base_change(target, coset_transform, config, warnings)

    return Factorization(
        name=f"decomposition(deg q={m}, deg r={k})",
        target=target,
        factors=[unpermute, fiber_transforms, StrideL(n, m, label=f"L^{n}_{m}"), spectral,
                 Dense(base_change, label="base change B")],
        warnings=warnings,
    )
