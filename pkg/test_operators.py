# test_operators.py

import numpy as np
import pytest

from polytransform.algorithms import cooley_tukey
from polytransform.errors import DimensionMismatchError, MalformedSpecError
from polytransform.operators import (
    CircShiftZ, ColumnConcat, ComplementaryDirectSum, Compose, CostReport, Dense, Diagonal, DirectSum, FlipJ,
    Identity, LinOp, PermK, StrideL, Tensor, Transpose, TwiddleT, TwoSparse, op_apply, op_cost, op_to_dense,
    op_transpose,
)
from polytransform.transforms import named_transform
from polytransform.utils import relative_error

MAX_DIM = 32


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _random_values(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _random_leaf(rng, n: int) -> LinOp:
    choice = rng.integers(9)
    k = int(rng.choice(_divisors(n)))
    if choice == 0:
        return Dense(_random_values(rng, n, n))
    if choice == 1:
        return Diagonal(_random_values(rng, n))
    if choice == 2:
        return Identity(n)
    if choice == 3:
        return FlipJ(n)
    if choice == 4:
        return CircShiftZ(n, int(rng.choice([1, -1])))
    if choice == 5:
        return StrideL(n, k)
    if choice == 6:
        return PermK(n, k)
    if choice == 7:
        return TwiddleT(n, k)
    entries = []
    for _ in range(n):
        width = int(rng.integers(0, min(2, n) + 1))
        columns = rng.choice(n, size=width, replace=False)
        entries.append([(int(c), complex(*rng.standard_normal(2))) for c in columns])
    return TwoSparse(n, n, entries)


def random_operator(rng, n: int, depth: int) -> LinOp:
    """A random square n x n operator tree of at most the given depth."""
    if depth == 0 or rng.random() < 0.25:
        return _random_leaf(rng, n)
    choice = rng.integers(6)
    if choice == 0:
        return Compose([random_operator(rng, n, depth - 1) for _ in range(int(rng.integers(1, 4)))])
    if choice == 1 and n > 1:
        split = int(rng.integers(1, n))
        return DirectSum([random_operator(rng, split, depth - 1), random_operator(rng, n - split, depth - 1)])
    if choice == 2 and n > 1:
        split = int(rng.integers(1, n))
        return ComplementaryDirectSum([random_operator(rng, split, depth - 1), random_operator(rng, n - split, depth - 1)])
    if choice == 3:
        k = int(rng.choice(_divisors(n)))
        return Tensor(random_operator(rng, k, depth - 1), random_operator(rng, n // k, depth - 1))
    if choice == 4:
        return Transpose(random_operator(rng, n, depth - 1))
    if n > 1:
        # a square block row: (A | B) with A n x a and B n x (n - a) built from tall pieces
        split = int(rng.integers(1, n))
        left = Compose([random_operator(rng, n, depth - 1), Dense(_random_values(rng, n, split))])
        right = TwoSparse.from_dense(np.eye(n)[:, split:])
        return ColumnConcat([left, right])
    return _random_leaf(rng, n)


# --- Oracle equivalence ---

def test_random_trees_agree_with_their_densification(rng):
    for _ in range(200):
        n = int(rng.integers(1, MAX_DIM + 1))
        op = random_operator(rng, n, 4)
        dense = op_to_dense(op)
        assert dense.shape == op.shape

        x = _random_values(rng, n)
        assert relative_error(op_apply(op, x), dense @ x) <= 1e-11
        assert relative_error(op.apply_transpose(x), dense.T @ x) <= 1e-11

        block = _random_values(rng, n, 3)
        assert relative_error(op.apply(block), dense @ block) <= 1e-11
        assert relative_error(op_to_dense(op_transpose(op)), dense.T) <= 1e-12


def test_densification_matches_apply_on_basis_vectors(rng):
    op = random_operator(rng, 12, 3)
    columns = np.column_stack([op.apply(e) for e in np.eye(12)])
    assert relative_error(columns, op.to_dense()) <= 1e-12


def test_apply_rejects_wrong_dimensions():
    with pytest.raises(DimensionMismatchError):
        Identity(3).apply(np.ones(4))
    with pytest.raises(DimensionMismatchError):
        Dense(np.ones((2, 3))).apply_transpose(np.ones(3))
    with pytest.raises(DimensionMismatchError):
        Compose([Dense(np.ones((2, 3))), Dense(np.ones((2, 2)))])
    with pytest.raises(DimensionMismatchError):
        ColumnConcat([Identity(2), Identity(3)])


# --- Permutations ---

def test_stride_permutation_examples():
    np.testing.assert_allclose(StrideL(4, 2).apply([0, 1, 2, 3]), [0, 2, 1, 3])
    np.testing.assert_allclose(FlipJ(2).to_dense(), [[0, 1], [1, 0]])
    np.testing.assert_allclose(CircShiftZ(3).apply([1, 2, 3]), [3, 1, 2])
    np.testing.assert_allclose(CircShiftZ(3, -1).apply([1, 2, 3]), [2, 3, 1])


@pytest.mark.parametrize("n", range(1, 65))
def test_stride_permutation_inverses(n):
    for k in _divisors(n):
        product = StrideL(n, k).to_dense() @ StrideL(n, n // k).to_dense()
        np.testing.assert_array_equal(product, np.eye(n))
        np.testing.assert_array_equal(op_transpose(StrideL(n, k)).to_dense(), StrideL(n, n // k).to_dense())


def test_stride_transpose_is_a_stride():
    transposed = op_transpose(StrideL(6, 2))
    assert isinstance(transposed, StrideL) and transposed.k == 3
    for e in np.eye(6):
        np.testing.assert_array_equal(transposed.apply(StrideL(6, 2).apply(e)), e)


@pytest.mark.parametrize("n", range(1, 25))
def test_stride_closed_form_membership(n):
    # (i, j) is 1 iff j = floor(i k (n+1) / n) mod n
    for k in _divisors(n):
        expected = np.zeros((n, n))
        for i in range(n):
            expected[i, (i * k * (n + 1) // n) % n] = 1
        np.testing.assert_array_equal(StrideL(n, k).to_dense(), expected)


@pytest.mark.parametrize("n, k", [(8, 2), (8, 4), (12, 3), (12, 4), (9, 3), (6, 6)])
def test_perm_k_is_alternating_flips_after_stride(n, k):
    m = n // k
    blocks = [np.eye(m) if b % 2 == 0 else np.fliplr(np.eye(m)) for b in range(k)]
    expected = np.zeros((n, n))
    for b, block in enumerate(blocks):
        expected[b * m:(b + 1) * m, b * m:(b + 1) * m] = block
    np.testing.assert_array_equal(PermK(n, k).to_dense(), expected @ StrideL(n, k).to_dense())
    np.testing.assert_array_equal(op_transpose(PermK(n, k)).to_dense(), PermK(n, k).to_dense().T)


def test_divisibility_is_required():
    with pytest.raises(MalformedSpecError):
        StrideL(6, 4)
    with pytest.raises(MalformedSpecError):
        PermK(10, 3)
    with pytest.raises(MalformedSpecError):
        CircShiftZ(4, 2)


def test_twiddle():
    np.testing.assert_allclose(TwiddleT(4, 2).apply(np.ones(4)), [1, 1, 1, -1j], atol=1e-15)


# --- Structure ---

def test_tensor_is_kronecker(rng):
    a, b = Dense(_random_values(rng, 2, 3)), Dense(_random_values(rng, 4, 2))
    np.testing.assert_allclose(Tensor(a, b).to_dense(), np.kron(a.to_dense(), b.to_dense()))
    x = _random_values(rng, 6)
    np.testing.assert_allclose(Tensor(a, b).apply(x), np.kron(a.to_dense(), b.to_dense()) @ x, atol=1e-12)

    dft2 = Dense(named_transform("dft", 2))
    np.testing.assert_allclose(Tensor(Identity(2), dft2).to_dense(), np.kron(np.eye(2), dft2.to_dense()))


@pytest.mark.parametrize("k, m", [(2, 3), (3, 4), (4, 2), (5, 1)])
def test_tensor_stride_duality(rng, k, m):
    n = k * m
    a = Dense(_random_values(rng, m, m))
    stride = StrideL(n, k).to_dense()
    # I_k (x) A = L^n_k (A (x) I_k) (L^n_k)^-1
    np.testing.assert_allclose(
        Tensor(Identity(k), a).to_dense(), stride @ Tensor(a, Identity(k)).to_dense() @ stride.T, atol=1e-12
    )


def test_direct_sums(rng):
    a, b = Dense(_random_values(rng, 2, 3)), Dense(_random_values(rng, 1, 1))
    dense = DirectSum([a, b]).to_dense()
    assert dense.shape == (3, 4)
    np.testing.assert_allclose(dense[:2, :3], a.to_dense())
    np.testing.assert_allclose(dense[2:, 3:], b.to_dense())

    complementary = ComplementaryDirectSum([a, b]).to_dense()
    np.testing.assert_allclose(complementary[:2, 1:], a.to_dense())
    np.testing.assert_allclose(complementary[2:, :1], b.to_dense())
    np.testing.assert_allclose(ComplementaryDirectSum([a]).to_dense(), a.to_dense())


def test_empty_blocks_act_as_nothing():
    empty = Dense(np.zeros((0, 0)))
    op = DirectSum([Identity(2), empty, FlipJ(2)])
    assert op.shape == (4, 4)
    np.testing.assert_allclose(op.apply([1, 2, 3, 4]), [1, 2, 4, 3])
    assert op_cost(empty) == CostReport()


def test_two_sparse_validation():
    with pytest.raises(ValueError):
        TwoSparse(1, 3, [[(0, 1), (1, 1), (2, 1)]])
    with pytest.raises(ValueError):
        TwoSparse(1, 3, [[(0, 1), (0, 2)]])
    with pytest.raises(ValueError):
        TwoSparse(1, 2, [[(2, 1)]])
    np.testing.assert_allclose(TwoSparse.ones_column(3).to_dense(), np.ones((3, 1)))


# --- Cost model ---

def test_cost_examples():
    assert op_cost(Identity(7)).total_real_flops == 0
    assert op_cost(Diagonal([2, 3j, 0.5, -4])).complex_mults == 4
    assert op_cost(Diagonal([1, -1, 2])).complex_mults == 1
    assert op_cost(StrideL(8, 2)).total_real_flops == 0

    # 2 x 3 generic dense: 6 mults and 2 adds per row
    generic = op_cost(Dense([[2, 3, 4], [5, 6, 7]]))
    assert (generic.complex_mults, generic.complex_adds) == (6, 4)
    assert generic.total_real_flops == 6 * 6 + 2 * 4

    butterfly = op_cost(Dense(named_transform("dft", 2)))
    assert (butterfly.complex_mults, butterfly.complex_adds) == (0, 2)


def test_dense_leaves_are_charged_every_row_sum():
    identity = np.eye(3)
    dense = op_cost(Dense(identity))
    assert (dense.complex_mults, dense.complex_adds) == (0, 6)
    sparse_identity = op_cost(TwoSparse.from_dense(identity))
    assert (sparse_identity.complex_mults, sparse_identity.complex_adds) == (0, 0)

    halves = op_cost(Dense([[0.5, 0], [0, 2]]))
    assert (halves.complex_mults, halves.complex_adds) == (2, 2)


def test_cost_is_additive(rng):
    parts = [random_operator(rng, 6, 2) for _ in range(3)]
    assert op_cost(Compose(parts)) == sum((op_cost(p) for p in parts), CostReport())
    assert op_cost(DirectSum(parts)) == sum((op_cost(p) for p in parts), CostReport())

    a = Dense(named_transform("dft", 3))
    tensor = op_cost(Tensor(Identity(4), a))
    assert tensor == op_cost(a).times(4)


def test_flat_cooley_tukey_dft8_cost():
    # DFT_4 stays a dense leaf here: its four +-i entries are charged on both copies
    cost = cooley_tukey(2, 4).cost()
    assert (cost.complex_mults, cost.complex_adds) == (11, 32)
    assert cost.total_real_flops == 130
