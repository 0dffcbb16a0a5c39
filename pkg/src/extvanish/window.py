"""Finite windows of a graded module with operator matrices."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactmath import FieldSpec


@dataclass(frozen=True)
class WindowOperator:
    """Degree-``degree`` operator; ``matrices[n]`` maps piece ``n`` to piece ``n + degree``."""

    degree: int
    matrices: dict = dc_field(repr=False)

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("operator degree must be positive")


@dataclass(frozen=True)
class GradedWindow:
    """Pieces ``n0 .. n1`` of a graded vector space and operators acting on them."""

    n0: int
    n1: int
    piece_dims: list
    operators: list = dc_field(default_factory=list)
    field: FieldSpec = FieldSpec(0)
    piece_bases: list | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.n1 < self.n0:
            raise ValueError("empty window")
        if len(self.piece_dims) != self.n1 - self.n0 + 1:
            raise ValueError("piece_dims does not match the window range")
        for op in self.operators:
            for n, m in op.matrices.items():
                if not (self.n0 <= n and n + op.degree <= self.n1):
                    raise ValueError(f"operator matrix at {n} leaves the window")
                if m.shape != (self.dim(n + op.degree), self.dim(n)):
                    raise ValueError(f"operator matrix at {n} has shape {m.shape}")

    @property
    def range(self) -> tuple[int, int]:
        return self.n0, self.n1

    def dim(self, n: int) -> int:
        return self.piece_dims[n - self.n0]

    def matrix(self, op_index: int, n: int) -> np.ndarray:
        return self.operators[op_index].matrices[n]

    def commutes(self, i: int, j: int) -> bool:
        """Whether operators ``i`` and ``j`` commute wherever both composites are defined."""
        a, b = self.operators[i], self.operators[j]
        f = self.field
        for n in range(self.n0, self.n1 - a.degree - b.degree + 1):
            ab = f.matmul(a.matrices[n + b.degree], b.matrices[n])
            ba = f.matmul(b.matrices[n + a.degree], a.matrices[n])
            if np.any(ab != ba):
                return False
        return True
