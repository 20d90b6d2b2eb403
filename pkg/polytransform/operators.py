# polytransform/operators.py

from abc import ABC, abstractmethod
from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator
from scipy import sparse
from scipy.linalg import block_diag

from .config import DEFAULT_CONFIG
from .errors import DimensionMismatchError, MalformedSpecError
from .utils import omega


class CostReport(BaseModel):
    """Arithmetic cost of one matrix-vector product: 6 real flops per complex mult, 2 per complex add."""
    model_config = ConfigDict(frozen=True)

    complex_mults: int = Field(0, ge=0)
    complex_adds: int = Field(0, ge=0)

    @computed_field
    @property
    def total_real_flops(self) -> int:
        return 6 * self.complex_mults + 2 * self.complex_adds

    def __add__(self, other: "CostReport") -> "CostReport":
        return CostReport(
            complex_mults=self.complex_mults + other.complex_mults,
            complex_adds=self.complex_adds + other.complex_adds,
        )

    def times(self, count: int) -> "CostReport":
        return CostReport(complex_mults=count * self.complex_mults, complex_adds=count * self.complex_adds)


ZERO_COST = CostReport()


def _is_trivial(values: np.ndarray) -> np.ndarray:
    """Entries within tolerance of 0, 1 or -1 cost no multiplication."""
    tol = DEFAULT_CONFIG.trivial_entry_tol
    values = np.asarray(values, dtype=complex)
    return (np.abs(values) <= tol) | (np.abs(values - 1) <= tol) | (np.abs(values + 1) <= tol)


def _sparse_cost(matrix) -> CostReport:
    """Cost of a sparse matrix: charged mults per nonzero, nnz-1 adds per row."""
    if 0 in matrix.shape:
        return ZERO_COST
    coo = sparse.coo_matrix(matrix)
    nonzero = np.abs(coo.data) > DEFAULT_CONFIG.trivial_entry_tol
    mults = int(np.count_nonzero(nonzero & ~_is_trivial(coo.data)))
    per_row = np.bincount(coo.row[nonzero], minlength=coo.shape[0])
    adds = int(np.maximum(per_row - 1, 0).sum())
    return CostReport(complex_mults=mults, complex_adds=adds)


def _dense_cost(matrix: np.ndarray) -> CostReport:
    """Cost of a dense r x c matrix: r(c-1) adds, a mult for every entry other than 0 or +-1."""
    rows, cols = matrix.shape
    if rows == 0 or cols == 0:
        return ZERO_COST
    mults = int(np.count_nonzero(~_is_trivial(matrix)))
    return CostReport(complex_mults=mults, complex_adds=rows * (cols - 1))


def _frozen(array) -> np.ndarray:
    array = np.array(array, dtype=complex)
    array.setflags(write=False)
    return array


class LinOp(ABC):
    """
    A node of a structured-operator tree.

    Every node knows its shape, applies itself matrix-free to a block of column
    vectors, applies its plain (non-conjugated) transpose, densifies itself
    independently of `apply`, and reports the cost of one application.
    Trees are immutable once built.
    """

    def __init__(self, rows: int, cols: int, label: str = ""):
        if rows < 0 or cols < 0:
            raise MalformedSpecError(f"Operator dimensions must be non-negative, got {rows}x{cols}.")
        self._rows = rows
        self._cols = cols
        self.label = label

    @property
    def shape(self) -> Tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    def apply(self, x) -> np.ndarray:
        """Computes op @ x for a vector of length cols, or an array of shape (cols, batch)."""
        x = np.asarray(x, dtype=complex)
        if x.ndim not in (1, 2) or x.shape[0] != self._cols:
            raise DimensionMismatchError(
                f"{self.describe()} expects input with {self._cols} rows, got shape {x.shape}."
            )
        if x.ndim == 1:
            return self._apply(x[:, None])[:, 0]
        return self._apply(x)

    def apply_transpose(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.ndim not in (1, 2) or x.shape[0] != self._rows:
            raise DimensionMismatchError(
                f"Transpose of {self.describe()} expects input with {self._rows} rows, got shape {x.shape}."
            )
        if x.ndim == 1:
            return self._apply_t(x[:, None])[:, 0]
        return self._apply_t(x)

    def transpose(self) -> "LinOp":
        return Transpose(self)

    def describe(self) -> str:
        name = type(self).__name__
        return f"{name}[{self._rows}x{self._cols}]" + (f" '{self.label}'" if self.label else "")

    def __repr__(self) -> str:
        return self.describe()

    @property
    def children(self) -> Sequence["LinOp"]:
        return ()

    @abstractmethod
    def _apply(self, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _apply_t(self, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def to_dense(self) -> np.ndarray:
        pass

    @abstractmethod
    def cost(self) -> CostReport:
        pass


# --- Leaf nodes ---

class Dense(LinOp):
    def __init__(self, matrix, label: str = ""):
        matrix = _frozen(matrix)
        if matrix.ndim != 2:
            raise MalformedSpecError(f"Dense operator needs a 2-D matrix, got shape {matrix.shape}.")
        super().__init__(matrix.shape[0], matrix.shape[1], label)
        self.matrix = matrix

    def _apply(self, x):
        return self.matrix @ x

    def _apply_t(self, x):
        return self.matrix.T @ x

    def to_dense(self):
        return np.array(self.matrix)

    def cost(self):
        return _dense_cost(self.matrix)

    def transpose(self):
        return Dense(self.matrix.T, label=f"{self.label}^T" if self.label else "")


class Diagonal(LinOp):
    def __init__(self, entries, label: str = ""):
        entries = _frozen(np.ravel(entries))
        super().__init__(len(entries), len(entries), label)
        self.entries = entries

    def _apply(self, x):
        return self.entries[:, None] * x

    def _apply_t(self, x):
        return self._apply(x)

    def to_dense(self):
        return np.diag(self.entries)

    def cost(self):
        return CostReport(complex_mults=int(np.count_nonzero(~_is_trivial(self.entries))))

    def transpose(self):
        return self


class Identity(LinOp):
    def __init__(self, n: int, label: str = ""):
        super().__init__(n, n, label)

    def _apply(self, x):
        return x.copy()

    def _apply_t(self, x):
        return x.copy()

    def to_dense(self):
        return np.eye(self.rows, dtype=complex)

    def cost(self):
        return ZERO_COST

    def transpose(self):
        return self


class FlipJ(LinOp):
    """The complementary identity J_n: reverses the order of the entries."""

    def __init__(self, n: int, label: str = ""):
        super().__init__(n, n, label)

    def _apply(self, x):
        return x[::-1].copy()

    def _apply_t(self, x):
        return self._apply(x)

    def to_dense(self):
        return np.fliplr(np.eye(self.rows, dtype=complex))

    def cost(self):
        return ZERO_COST

    def transpose(self):
        return self


class CircShiftZ(LinOp):
    """
    The circular shift Z_n with (Z x)_0 = x_{n-1}; power -1 gives its inverse.
    """

    def __init__(self, n: int, power: int = 1, label: str = ""):
        if power not in (1, -1):
            raise MalformedSpecError(f"CircShiftZ power must be 1 or -1, got {power}.")
        super().__init__(n, n, label)
        self.power = power

    def _apply(self, x):
        return np.roll(x, self.power, axis=0)

    def _apply_t(self, x):
        return np.roll(x, -self.power, axis=0)

    def to_dense(self):
        return np.roll(np.eye(self.rows, dtype=complex), self.power, axis=0)

    def cost(self):
        return ZERO_COST

    def transpose(self):
        return CircShiftZ(self.rows, -self.power, label=self.label)


def _check_divides(n: int, k: int, name: str) -> int:
    if k < 1 or n % k:
        raise MalformedSpecError(f"{name}({n}, {k}) requires k to divide n.")
    return n // k


class StrideL(LinOp):
    """
    The stride permutation L^n_k with m = n/k, mapping index i*k + j to j*m + i.
    It reads the input at stride k.
    """

    def __init__(self, n: int, k: int, label: str = ""):
        self.m = _check_divides(n, k, "StrideL") if n else 0
        super().__init__(n, n, label)
        self.k = k

    def _apply(self, x):
        batch = x.shape[1]
        return x.reshape(self.m, self.k, batch).transpose(1, 0, 2).reshape(self.rows, batch)

    def _apply_t(self, x):
        batch = x.shape[1]
        return x.reshape(self.k, self.m, batch).transpose(1, 0, 2).reshape(self.rows, batch)

    def permutation(self) -> np.ndarray:
        """perm[output index] = input index."""
        i, j = np.meshgrid(np.arange(self.m), np.arange(self.k), indexing="ij")
        perm = np.empty(self.rows, dtype=int)
        perm[(j * self.m + i).ravel()] = (i * self.k + j).ravel()
        return perm

    def to_dense(self):
        dense = np.zeros((self.rows, self.rows), dtype=complex)
        dense[np.arange(self.rows), self.permutation()] = 1
        return dense

    def cost(self):
        return ZERO_COST

    def transpose(self):
        return StrideL(self.rows, self.m, label=self.label)


class PermK(LinOp):
    """
    K^n_k = (I_m + J_m + I_m + ...) L^n_k with k alternating blocks of size m = n/k:
    after the stride permutation every odd block of m entries is reversed.
    """

    def __init__(self, n: int, k: int, label: str = ""):
        self.m = _check_divides(n, k, "PermK")
        super().__init__(n, n, label)
        self.k = k
        self._stride = StrideL(n, k)

    def _flip_odd_blocks(self, x):
        blocks = x.reshape(self.k, self.m, x.shape[1]).copy()
        blocks[1::2] = blocks[1::2, ::-1]
        return blocks.reshape(self.rows, x.shape[1])

    def _apply(self, x):
        return self._flip_odd_blocks(self._stride._apply(x))

    def _apply_t(self, x):
        return self._stride._apply_t(self._flip_odd_blocks(x))

    def block_flips(self) -> np.ndarray:
        blocks = [np.eye(self.m) if b % 2 == 0 else np.fliplr(np.eye(self.m)) for b in range(self.k)]
        return block_diag(*blocks).astype(complex)

    def to_dense(self):
        return self.block_flips() @ self._stride.to_dense()

    def cost(self):
        return ZERO_COST


class TwiddleT(LinOp):
    """The Cooley-Tukey twiddle diagonal T^n_k: index j*k + i carries omega_n^(i*j), i < k, j < n/k."""

    def __init__(self, n: int, k: int, label: str = ""):
        self.m = _check_divides(n, k, "TwiddleT")
        super().__init__(n, n, label)
        self.k = k
        j, i = np.meshgrid(np.arange(self.m), np.arange(self.k), indexing="ij")
        self.entries = _frozen(np.atleast_1d(omega(n, (i * j).ravel() % n)))

    def _apply(self, x):
        return self.entries[:, None] * x

    def _apply_t(self, x):
        return self._apply(x)

    def to_dense(self):
        return np.diag(self.entries)

    def cost(self):
        return CostReport(complex_mults=int(np.count_nonzero(~_is_trivial(self.entries))))

    def transpose(self):
        return self


class TwoSparsePattern(BaseModel):
    """Row-wise entries of a matrix with at most two nonzeros per row."""
    model_config = ConfigDict(frozen=True)

    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: Tuple[Tuple[Tuple[int, complex], ...], ...]

    @model_validator(mode="after")
    def _check_rows(self) -> "TwoSparsePattern":
        if len(self.entries) != self.rows:
            raise ValueError(f"Expected {self.rows} rows of entries, got {len(self.entries)}.")
        for index, row in enumerate(self.entries):
            if len(row) > 2:
                raise ValueError(f"Row {index} has {len(row)} entries; at most 2 are allowed.")
            columns = [col for col, _ in row]
            if len(set(columns)) != len(columns):
                raise ValueError(f"Row {index} repeats a column.")
            if any(not 0 <= col < self.cols for col in columns):
                raise ValueError(f"Row {index} references a column outside 0..{self.cols - 1}.")
        return self


class TwoSparse(LinOp):
    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[Tuple[int, complex]]], label: str = ""):
        pattern = TwoSparsePattern(
            rows=rows,
            cols=cols,
            entries=tuple(tuple((int(c), complex(v)) for c, v in row) for row in entries),
        )
        super().__init__(rows, cols, label)
        self.pattern = pattern
        row_index = [r for r, row in enumerate(pattern.entries) for _ in row]
        col_index = [c for row in pattern.entries for c, _ in row]
        values = [v for row in pattern.entries for _, v in row]
        self._matrix = sparse.csr_matrix(
            (np.asarray(values, dtype=complex), (row_index, col_index)), shape=(rows, cols)
        )

    @classmethod
    def from_dense(cls, matrix, label: str = "") -> "TwoSparse":
        matrix = np.asarray(matrix, dtype=complex)
        entries = [
            [(c, matrix[r, c]) for c in np.flatnonzero(np.abs(matrix[r]) > DEFAULT_CONFIG.trivial_entry_tol)]
            for r in range(matrix.shape[0])
        ]
        return cls(matrix.shape[0], matrix.shape[1], entries, label)

    @classmethod
    def ones_column(cls, n: int, label: str = "1_n") -> "TwoSparse":
        return cls(n, 1, [[(0, 1)]] * n, label)

    def _apply(self, x):
        return np.asarray(self._matrix @ x)

    def _apply_t(self, x):
        return np.asarray(self._matrix.T @ x)

    def to_dense(self):
        return self._matrix.toarray()

    def cost(self):
        return _sparse_cost(self._matrix)


# --- Composite nodes ---

class Transpose(LinOp):
    def __init__(self, child: LinOp, label: str = ""):
        super().__init__(child.cols, child.rows, label or (f"{child.label}^T" if child.label else ""))
        self.child = child

    @property
    def children(self):
        return (self.child,)

    def _apply(self, x):
        return self.child._apply_t(x)

    def _apply_t(self, x):
        return self.child._apply(x)

    def to_dense(self):
        return self.child.to_dense().T

    def cost(self):
        return self.child.cost()

    def transpose(self):
        return self.child


def _offsets(sizes: Sequence[int]) -> List[int]:
    return [0, *np.cumsum(sizes).tolist()]


def _require_children(children: Sequence[LinOp], name: str) -> Tuple[LinOp, ...]:
    children = tuple(children)
    if not children:
        raise MalformedSpecError(f"{name} needs at least one child.")
    return children


class DirectSum(LinOp):
    def __init__(self, children: Sequence[LinOp], label: str = ""):
        self._children = _require_children(children, "DirectSum")
        super().__init__(sum(c.rows for c in self._children), sum(c.cols for c in self._children), label)
        self._row_offsets = _offsets([c.rows for c in self._children])
        self._col_offsets = _offsets([c.cols for c in self._children])

    @property
    def children(self):
        return self._children

    def _apply(self, x):
        parts = [
            child._apply(x[self._col_offsets[i]:self._col_offsets[i + 1]])
            for i, child in enumerate(self._children)
        ]
        return np.concatenate(parts, axis=0)

    def _apply_t(self, x):
        parts = [
            child._apply_t(x[self._row_offsets[i]:self._row_offsets[i + 1]])
            for i, child in enumerate(self._children)
        ]
        return np.concatenate(parts, axis=0)

    def to_dense(self):
        return block_diag(*[c.to_dense() for c in self._children]).astype(complex).reshape(self.shape)

    def cost(self):
        return sum((c.cost() for c in self._children), ZERO_COST)

    def transpose(self):
        return DirectSum([c.transpose() for c in self._children], label=self.label)


class ComplementaryDirectSum(LinOp):
    """
    Block anti-diagonal stacking: row block i holds child i in column block L-1-i.
    """

    def __init__(self, children: Sequence[LinOp], label: str = ""):
        self._children = _require_children(children, "ComplementaryDirectSum")
        super().__init__(sum(c.rows for c in self._children), sum(c.cols for c in self._children), label)
        self._row_offsets = _offsets([c.rows for c in self._children])
        # column blocks run through the children in reverse
        self._col_offsets = _offsets([c.cols for c in reversed(self._children)])

    @property
    def children(self):
        return self._children

    def _column_block(self, x, i):
        b = len(self._children) - 1 - i
        return x[self._col_offsets[b]:self._col_offsets[b + 1]]

    def _apply(self, x):
        return np.concatenate(
            [child._apply(self._column_block(x, i)) for i, child in enumerate(self._children)], axis=0
        )

    def _apply_t(self, x):
        parts = [
            child._apply_t(x[self._row_offsets[i]:self._row_offsets[i + 1]])
            for i, child in enumerate(self._children)
        ]
        return np.concatenate(parts[::-1], axis=0)

    def to_dense(self):
        dense = np.zeros(self.shape, dtype=complex)
        count = len(self._children)
        for i, child in enumerate(self._children):
            b = count - 1 - i
            dense[self._row_offsets[i]:self._row_offsets[i + 1], self._col_offsets[b]:self._col_offsets[b + 1]] = child.to_dense()
        return dense

    def cost(self):
        return sum((c.cost() for c in self._children), ZERO_COST)

    def transpose(self):
        return ComplementaryDirectSum([c.transpose() for c in reversed(self._children)], label=self.label)


class Tensor(LinOp):
    """The Kronecker product left (x) right, applied as two batched passes."""

    def __init__(self, left: LinOp, right: LinOp, label: str = ""):
        super().__init__(left.rows * right.rows, left.cols * right.cols, label)
        self.left = left
        self.right = right

    @property
    def children(self):
        return (self.left, self.right)

    @staticmethod
    def _two_pass(x, left_cols, right_cols, left_fn, right_fn, right_rows, left_rows):
        batch = x.shape[1]
        blocks = x.reshape(left_cols, right_cols, batch)
        inner = right_fn(blocks.transpose(1, 0, 2).reshape(right_cols, left_cols * batch))
        inner = inner.reshape(right_rows, left_cols, batch)
        outer = left_fn(inner.transpose(1, 0, 2).reshape(left_cols, right_rows * batch))
        return outer.reshape(left_rows * right_rows, batch)

    def _apply(self, x):
        return self._two_pass(
            x, self.left.cols, self.right.cols, self.left._apply, self.right._apply, self.right.rows, self.left.rows
        )

    def _apply_t(self, x):
        return self._two_pass(
            x, self.left.rows, self.right.rows, self.left._apply_t, self.right._apply_t, self.right.cols, self.left.cols
        )

    def to_dense(self):
        return np.kron(self.left.to_dense(), self.right.to_dense())

    def cost(self):
        return self.right.cost().times(self.left.cols) + self.left.cost().times(self.right.rows)

    def transpose(self):
        return Tensor(self.left.transpose(), self.right.transpose(), label=self.label)


class Compose(LinOp):
    """The product children[0] @ children[1] @ ... ; the last child is applied first."""

    def __init__(self, children: Sequence[LinOp], label: str = ""):
        self._children = _require_children(children, "Compose")
        for left, right in zip(self._children, self._children[1:]):
            if left.cols != right.rows:
                raise DimensionMismatchError(f"Cannot compose {left.describe()} with {right.describe()}.")
        super().__init__(self._children[0].rows, self._children[-1].cols, label)

    @property
    def children(self):
        return self._children

    def _apply(self, x):
        for child in reversed(self._children):
            x = child._apply(x)
        return x

    def _apply_t(self, x):
        for child in self._children:
            x = child._apply_t(x)
        return x

    def to_dense(self):
        return reduce(np.matmul, [c.to_dense() for c in self._children])

    def cost(self):
        return sum((c.cost() for c in self._children), ZERO_COST)

    def transpose(self):
        return Compose([c.transpose() for c in reversed(self._children)], label=self.label)


class ColumnConcat(LinOp):
    """The block row (A_0 | A_1 | ... | A_{L-1}); all children share a row count."""

    def __init__(self, children: Sequence[LinOp], label: str = ""):
        self._children = _require_children(children, "ColumnConcat")
        rows = self._children[0].rows
        if any(c.rows != rows for c in self._children):
            raise DimensionMismatchError("ColumnConcat children must share a row count.")
        super().__init__(rows, sum(c.cols for c in self._children), label)
        self._col_offsets = _offsets([c.cols for c in self._children])

    @property
    def children(self):
        return self._children

    def _apply(self, x):
        result = np.zeros((self.rows, x.shape[1]), dtype=complex)
        for i, child in enumerate(self._children):
            result += child._apply(x[self._col_offsets[i]:self._col_offsets[i + 1]])
        return result

    def _apply_t(self, x):
        return np.concatenate([child._apply_t(x) for child in self._children], axis=0)

    def to_dense(self):
        return np.hstack([c.to_dense() for c in self._children])

    def cost(self):
        children = sum((c.cost() for c in self._children), ZERO_COST)
        return children + CostReport(complex_adds=(len(self._children) - 1) * self.rows)


# --- Module-level operations ---

def op_apply(op: LinOp, x) -> np.ndarray:
    return op.apply(x)


def op_to_dense(op: LinOp) -> np.ndarray:
    return op.to_dense()


def op_cost(op: LinOp) -> CostReport:
    return op.cost()


def op_transpose(op: LinOp) -> LinOp:
    return op.transpose()
