"""Free modules ``A^r`` and the maps between them.

A vector of ``A^r`` is stored generator-major: coordinates ``(g, i)`` at
position ``g * dim A + i`` hold the coefficient of ``b_i e_g``.  A left
module map out of ``A^r`` is determined by the images of the generators
``e_g``; ``images[:, g]`` is the image of ``e_g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .algebras import BasisAlgebra


def free_expand(alg: BasisAlgebra, images: np.ndarray, target_rank: int) -> np.ndarray:
    """Field matrix of the map ``A^r -> A^s`` sending ``e_g`` to ``images[:, g]``."""
    n = alg.dim
    r = images.shape[1]
    if r == 0 or target_rank == 0:
        return alg.field.zeros((target_rank * n, r * n))
    A = images.reshape(target_rank, n, r)
    # b_j * a  has coordinate k equal to  sum_i a_i mult[j, i, k]
    E = np.tensordot(A, alg.mult, axes=([1], [1]))          # (h, g, j, k)
    E = np.transpose(E, (0, 3, 1, 2)).reshape(target_rank * n, r * n)
    return alg.field.reduce(E)


def module_expand(action: np.ndarray, images: np.ndarray, field) -> np.ndarray:
    """Field matrix of the map ``A^r -> N`` sending ``e_g`` to ``images[:, g]``.

    ``action[j]`` is the matrix of ``b_j`` on ``N``.
    """
    nA, d, _ = action.shape
    r = images.shape[1]
    if r == 0 or d == 0:
        return field.zeros((d, r * nA))
    E = np.tensordot(action, images, axes=([2], [0]))       # (j, row, g)
    return field.reduce(np.transpose(E, (1, 2, 0)).reshape(d, r * nA))


def free_left_multiply(alg: BasisAlgebra, a: np.ndarray, vectors: np.ndarray, rank: int) -> np.ndarray:
    """``a * v`` for each column ``v`` of ``vectors`` in ``A^rank``."""
    n = alg.dim
    m = vectors.shape[1]
    V = vectors.reshape(rank, n, m)
    L = alg.left_matrix(a)
    out = np.tensordot(L, V, axes=([1], [1]))               # (k, h, m)
    return alg.field.reduce(np.transpose(out, (1, 0, 2)).reshape(rank * n, m))


def hom_matrix(entries: np.ndarray, action: np.ndarray, field) -> np.ndarray:
    """Matrix of ``phi -> phi o f`` from ``Hom(A^s, N)`` to ``Hom(A^r, N)``.

    ``entries[h, g]`` is the algebra coefficient of ``e_h`` in ``f(e_g)``;
    cochains ``phi`` are stored generator-major as the stacked ``phi(e_h)``.
    """
    s, r, _ = entries.shape
    d = action.shape[1]
    if s == 0 or r == 0 or d == 0:
        return field.zeros((r * d, s * d))
    B = np.tensordot(entries, action, axes=([2], [0]))      # (h, g, row, col)
    return field.reduce(np.transpose(B, (1, 2, 0, 3)).reshape(r * d, s * d))


@dataclass(frozen=True, eq=False)
class FreeMap:
    """Left module map ``A^source_rank -> A^target_rank``."""

    algebra: BasisAlgebra = dc_field(repr=False)
    source_rank: int
    target_rank: int
    images: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        n = self.algebra.dim
        if self.images.shape != (self.target_rank * n, self.source_rank):
            raise ValueError(f"images shape {self.images.shape} does not match ranks")
        self.images.flags.writeable = False

    @cached_property
    def expanded(self) -> np.ndarray:
        return free_expand(self.algebra, self.images, self.target_rank)

    @cached_property
    def entries(self) -> np.ndarray:
        """``entries[h, g]``: coefficient of ``e_h`` in the image of ``e_g`` (an algebra element)."""
        n = self.algebra.dim
        return np.transpose(self.images.reshape(self.target_rank, n, self.source_rank), (0, 2, 1))

    def compose(self, other: "FreeMap") -> "FreeMap":
        """``self o other``."""
        if other.target_rank != self.source_rank:
            raise ValueError("rank mismatch in composition")
        f = self.algebra.field
        return FreeMap(self.algebra, other.source_rank, self.target_rank, f.matmul(self.expanded, other.images))

    def __eq__(self, other):
        if not isinstance(other, FreeMap):
            return NotImplemented
        return (self.source_rank == other.source_rank and self.target_rank == other.target_rank
                and bool(np.all(self.images == other.images)))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.images)

    @classmethod
    def identity(cls, alg: BasisAlgebra, rank: int) -> "FreeMap":
        f = alg.field
        images = f.zeros((rank * alg.dim, rank))
        for g in range(rank):
            images[g * alg.dim + alg.unit_index, g] = f(1)
        return cls(alg, rank, rank, images)

    @classmethod
    def zero(cls, alg: BasisAlgebra, source_rank: int, target_rank: int) -> "FreeMap":
        return cls(alg, source_rank, target_rank, alg.field.zeros((target_rank * alg.dim, source_rank)))
