"""Dense exact linear algebra over a :class:`FieldSpec`.

Everything goes through one routine, :func:`rref`, which returns the unique
reduced row echelon form; kernels and solutions read off from it are
therefore independent of row order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import InconsistentSystem
from .field import FieldSpec


def rref(a: np.ndarray, field: FieldSpec, ncols: int | None = None):
    """Reduced row echelon form of ``a``.

    Pivots are only searched in the first ``ncols`` columns (all by
    default); row operations act on the full rows, so trailing columns can
    carry an augmented block.

    Returns ``(R, pivots)`` with ``len(pivots)`` the rank of the searched
    block.
    """
    a = np.array(a, dtype=field.dtype, copy=True)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    if ncols is None:
        ncols = cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        # columns left of c are already zero in rows >= r
        a[r, c:] = field.reduce(a[r, c:] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others, c:] = field.reduce(a[others, c:] - np.outer(col[others], a[r, c:]))
        pivots.append(c)
        r += 1
    return a, pivots


def rank(a: np.ndarray, field: FieldSpec) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(rref(a, field)[1])


def kernel(a: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Basis of the right null space, as the columns of the returned matrix."""
    a = np.asarray(a)
    rows, cols = a.shape
    if rows == 0 or a.size == 0:
        return field.eye(cols)
    R, pivots = rref(a, field)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    K = field.zeros((cols, len(free)))
    if free:
        K[free, range(len(free))] = field(1)
        if pivots:
            K[np.ix_(pivots, range(len(free)))] = field.reduce(-R[: len(pivots)][:, free])
    return K


def row_basis(vectors: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Echelon basis (as rows) of the row space of ``vectors``."""
    vectors = np.asarray(vectors)
    if vectors.shape[0] == 0:
        return vectors.astype(field.dtype)
    R, pivots = rref(vectors, field)
    return R[: len(pivots)]


def solve(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    """A particular solution ``X`` of ``a @ X = b`` (free variables set to 0).

    ``b`` may be a vector or a matrix of right-hand sides. Raises
    :class:`InconsistentSystem` if some column has no solution.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ValueError("shape mismatch in solve")
    X = field.zeros((cols, b.shape[1]))
    if rows == 0:
        return X[:, 0] if vec else X
    aug = np.concatenate([np.asarray(a, dtype=field.dtype), np.asarray(b, dtype=field.dtype)], axis=1)
    R, pivots = rref(aug, field, ncols=cols)
    r = len(pivots)
    if r < rows and np.any(R[r:, cols:] != 0):
        raise InconsistentSystem("linear system has no solution")
    for i, pc in enumerate(pivots):
        X[pc] = R[i, cols:]
    return X[:, 0] if vec else X


def inverse(a: np.ndarray, field: FieldSpec) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([np.asarray(a, dtype=field.dtype), field.eye(n)], axis=1)
    R, pivots = rref(aug, field, ncols=n)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def complement_rows(sub: np.ndarray, space: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Rows spanning a complement of ``rowspace(sub)`` inside ``rowspace(sub) + rowspace(space)``.

    The returned rows are ``space`` rows reduced modulo ``sub`` and then put
    in echelon form, so they lie in ``rowspace(space) + rowspace(sub)``.
    """
    space = np.asarray(space, dtype=field.dtype)
    width = space.shape[1]
    if space.shape[0] == 0:
        return space.reshape(0, width)
    E = row_basis(np.asarray(sub, dtype=field.dtype).reshape(-1, width), field)
    if E.shape[0]:
        # pivot columns of a reduced echelon basis
        piv = [int(np.flatnonzero(row)[0]) for row in E]
        space = field.reduce(space - space[:, piv] @ E)
    return row_basis(space, field)


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable matrix over a field, stored row-major."""

    field: FieldSpec
    data: np.ndarray = dc_field(compare=False)

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise ValueError("DenseMatrix needs a 2-d array")
        if self.field.dtype is np.int64 and arr.dtype.kind in "iu":
            arr = self.field.reduce(arr.astype(np.int64))
        else:
            arr = self.field.array(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        return cls(field, np.array(rows, dtype=object).reshape(len(rows), width))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> tuple:
        return tuple(self.data.reshape(-1).tolist())

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.field == other.field and self.data.shape == other.data.shape
                and bool(np.all(self.data == other.data)))

    def __hash__(self):
        return hash((self.field, self.data.shape, self.entries))

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(self.field, self.field.matmul(self.data, other.data))

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self.data.T.copy())

    @property
    def T(self) -> "DenseMatrix":
        return self.transpose()

    def rank(self) -> int:
        return rank(self.data, self.field)

    def __repr__(self):
        return f"DenseMatrix({self.field}, {self.data.tolist()})"


def rank_kernel(m: DenseMatrix) -> tuple[int, list[tuple]]:
    """Rank of ``m`` and a basis of its right kernel (vectors as tuples)."""
    K = kernel(m.data, m.field)
    r = m.cols - K.shape[1]
    return r, [tuple(K[:, j].tolist()) for j in range(K.shape[1])]
