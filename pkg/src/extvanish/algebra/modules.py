"""Finite-dimensional left modules given by action matrices."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import NoAugmentation, NotAModule
from ..exactmath import inverse, solve
from .algebras import BasisAlgebra


@dataclass(frozen=True, eq=False)
class FDModule:
    """Left ``A``-module; ``action[i]`` is the matrix of the basis element ``b_i``."""

    algebra: BasisAlgebra = dc_field(repr=False)
    action: np.ndarray = dc_field(repr=False)
    name: str = "module"

    def __post_init__(self):
        a = self.action
        if a.ndim != 3 or a.shape[0] != self.algebra.dim or a.shape[1] != a.shape[2]:
            raise NotAModule(f"action has shape {a.shape}")
        a.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self):
        return self.algebra.field

    def act(self, a: np.ndarray) -> np.ndarray:
        """Matrix of the algebra element ``a``."""
        return self.field.reduce(np.tensordot(a, self.action, axes=([0], [0])))

    def check(self) -> None:
        f = self.field
        alg = self.algebra
        if np.any(self.action[alg.unit_index] != f.eye(self.dim)):
            raise NotAModule("unit does not act as the identity")
        lhs = np.transpose(np.tensordot(self.action, self.action, axes=([2], [1])), (0, 2, 1, 3))
        lhs = f.reduce(lhs)
        rhs = f.reduce(np.tensordot(alg.mult, self.action, axes=([2], [0])))
        if np.any(lhs != rhs):
            raise NotAModule("action is not multiplicative")

    def conjugate(self, S: np.ndarray) -> "FDModule":
        """Same module in the basis given by the columns of the invertible ``S``."""
        f = self.field
        if S.shape != (self.dim, self.dim):
            raise ValueError(f"change of basis must be {self.dim} x {self.dim}, got {S.shape}")
        Si = inverse(S, f)
        act = f.reduce(np.array([Si @ m @ S for m in self.action], dtype=f.dtype).reshape(self.action.shape))
        return FDModule(self.algebra, act, self.name)


def trivial_module(alg: BasisAlgebra) -> FDModule:
    """``k`` via the augmentation ``A -> k``."""
    if alg.augmentation is None:
        raise NoAugmentation(f"{alg.name} has no distinguished augmentation")
    act = alg.augmentation.reshape(alg.dim, 1, 1).copy()
    return FDModule(alg, act, "trivial")


def regular_module(alg: BasisAlgebra) -> FDModule:
    return FDModule(alg, alg.left_mult.copy(), "regular")


def submodule_of_free(alg: BasisAlgebra, basis: np.ndarray, rank: int, name: str = "submodule") -> FDModule:
    """The submodule of ``A^rank`` spanned by the columns of ``basis`` (assumed closed)."""
    from .free import free_left_multiply

    f = alg.field
    m = basis.shape[1]
    act = f.zeros((alg.dim, m, m))
    for j in range(alg.dim):
        image = free_left_multiply(alg, alg.basis_vector(j), basis, rank)
        act[j] = solve(basis, image, f)
    return FDModule(alg, act, name)


_SYZYGY = re.compile(r"^syzygy\((\d+)\)$")


def parse_module_kind(kind) -> tuple[str, int]:
    """Normalise ``"trivial"``, ``"regular"``, ``"syzygy(i)"``, ``("syzygy", i)`` or ``{"syzygy": i}``."""
    if isinstance(kind, dict) and set(kind) == {"syzygy"}:
        return "syzygy", int(kind["syzygy"])
    if isinstance(kind, (tuple, list)) and len(kind) == 2 and kind[0] == "syzygy":
        return "syzygy", int(kind[1])
    if isinstance(kind, str):
        if kind in ("trivial", "regular"):
            return kind, 0
        m = _SYZYGY.match(kind.replace(" ", ""))
        if m:
            return "syzygy", int(m.group(1))
    raise ValueError(f"unknown module kind {kind!r}")


def standard_module(alg: BasisAlgebra, kind) -> FDModule:
    """``trivial``, ``regular`` or ``syzygy(i)`` (of the trivial module), ``i >= 1``."""
    name, i = parse_module_kind(kind)
    if name == "trivial":
        return trivial_module(alg)
    if name == "regular":
        return regular_module(alg)
    if i < 1:
        raise ValueError("syzygy index must be at least 1")
    from .resolution import minimal_resolution

    res = minimal_resolution(alg, trivial_module(alg), i - 1)
    K, rank = res.top_kernel()
    return submodule_of_free(alg, K, rank, name=f"syzygy({i})")
