"""Ext groups from ``Hom_A(P_., N)`` and the Yoneda action of chain operators."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import NotACocycle, RangeExceedsResolution
from ..exactmath import SeriesWindow, complement_rows, kernel, rank, row_basis, solve
from ..window import GradedWindow, WindowOperator
from .algebras import BasisAlgebra
from .free import hom_matrix
from .modules import FDModule
from .resolution import MinimalResolution, minimal_resolution


class ExtCohomology:
    """Cochains ``C^n = Hom_A(P_n, N)`` stored as ``N^{b_n}``, generator-major.

    ``coboundary(n)`` is ``phi -> phi o d_{n+1}``.  A class in ``Ext^n`` is
    represented by a cocycle; ``basis(n)`` gives cocycles whose classes form
    a basis.
    """

    def __init__(self, resolution: MinimalResolution, target: FDModule):
        if target.algebra is not resolution.algebra:
            raise ValueError("target module is over a different algebra")
        self.resolution = resolution
        self.target = target
        self.field = resolution.field
        self._cache: dict = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def cochain_dim(self, n: int) -> int:
        return self.resolution.betti[n] * self.target.dim

    def _need(self, n: int) -> None:
        if n + 1 > self.resolution.length:
            raise RangeExceedsResolution(f"Ext^{n} needs the resolution through degree {n + 1}")

    def pullback(self, fmap) -> np.ndarray:
        """Matrix of ``phi -> phi o fmap`` on cochains."""
        return hom_matrix(fmap.entries, self.target.action, self.field)

    def coboundary(self, n: int) -> np.ndarray:
        self._need(n)
        return self._memo(("d", n), lambda: self.pullback(self.resolution.differential(n + 1)))

    def coboundary_rank(self, n: int) -> int:
        if n < 0:
            return 0
        return self._memo(("r", n), lambda: rank(self.coboundary(n), self.field))

    def dim(self, n: int) -> int:
        return self.cochain_dim(n) - self.coboundary_rank(n) - self.coboundary_rank(n - 1)

    def cocycles(self, n: int) -> np.ndarray:
        return self._memo(("z", n), lambda: kernel(self.coboundary(n), self.field))

    def coboundaries(self, n: int) -> np.ndarray:
        """Rows spanning ``B^n``."""
        if n == 0:
            return self.field.zeros((0, self.cochain_dim(0)))
        return self._memo(("b", n), lambda: row_basis(self.coboundary(n - 1).T, self.field))

    def basis(self, n: int) -> np.ndarray:
        """Columns: cocycles representing a basis of ``Ext^n``."""
        return self._memo(("e", n), lambda: complement_rows(self.coboundaries(n), self.cocycles(n).T, self.field).T)

    def is_cocycle(self, n: int, phi: np.ndarray) -> bool:
        return not np.any(self.field.matmul(self.coboundary(n), phi))

    def coordinates(self, n: int, phis: np.ndarray) -> np.ndarray:
        """Coordinates in ``basis(n)`` of the classes of the cocycle columns ``phis``."""
        B = self.coboundaries(n)
        E = self.basis(n)
        M = np.concatenate([B.T, E], axis=1)
        vec = phis.ndim == 1
        X = solve(M, phis.reshape(M.shape[0], -1), self.field)[B.shape[0]:]
        return X[:, 0] if vec else X

    def classes_span(self, n: int, phis: np.ndarray) -> np.ndarray:
        """Rows: a basis of the span of the classes of ``phis`` in ``Ext^n`` coordinates."""
        if phis.shape[1] == 0:
            return self.field.zeros((0, self.dim(n)))
        return row_basis(self.coordinates(n, phis).T, self.field)

    def operator_matrix(self, op, n: int) -> np.ndarray:
        """Matrix of ``[phi] -> [phi o op_n]`` from ``Ext^n`` to ``Ext^{n + op.degree}``."""
        E = self.basis(n)
        images = self.field.matmul(self.pullback(op.map(n)), E)
        return self.coordinates(n + op.degree, images)


@dataclass
class ExtSequence:
    """``dim Ext^n_A(M, N)`` for ``n = 0 .. n_max``."""

    dims: SeriesWindow
    m_module: FDModule = dc_field(repr=False)
    n_module: FDModule = dc_field(repr=False)
    resolution: MinimalResolution | None = dc_field(default=None, repr=False)

    @property
    def n_max(self) -> int:
        return self.dims.stop - 1

    def __getitem__(self, n: int) -> int:
        return self.dims[n]

    def as_list(self) -> list[int]:
        return list(self.dims.terms)


def ext_dims(alg: BasisAlgebra, m: FDModule, n: FDModule, n_max: int,
             resolution: MinimalResolution | None = None, **caps) -> ExtSequence:
    """Dimensions of ``Ext^j_A(m, n)`` for ``0 <= j <= n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    res = resolution if resolution is not None else minimal_resolution(alg, m, n_max + 1, **caps)
    res.extend(n_max + 1)
    coh = ExtCohomology(res, n)
    dims = [coh.dim(j) for j in range(n_max + 1)]
    return ExtSequence(SeriesWindow(0, dims), m, n, res)


@dataclass
class ExtGenerators:
    """Algebra generators of ``Ext^*(k, k)`` found degree by degree."""

    degrees: list[int]
    cocycles: list[np.ndarray] = dc_field(repr=False)
    lifts: list = dc_field(repr=False)
    cohomology: ExtCohomology = dc_field(repr=False)

    @property
    def resolution(self) -> MinimalResolution:
        return self.cohomology.resolution


def ext_ring_generators(alg: BasisAlgebra, max_degree: int, resolution: MinimalResolution | None = None,
                        **caps) -> ExtGenerators:
    """Greedy generators of ``Ext_A^*(k, k)`` in degrees ``1 .. max_degree``.

    In each degree the span of products ``y * x`` (``x`` an earlier
    generator of degree ``a``, ``y`` running over a basis of
    ``Ext^{n - a}``) is computed through chain lifts of ``x``; a basis of a
    complement gives the new generators.  Lifts extend as far as the
    resolution allows.
    """
    from .chainmaps import lift_chain_map
    from .modules import trivial_module

    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if resolution is None:
        resolution = minimal_resolution(alg, trivial_module(alg), max_degree + 1, **caps)
    resolution.extend(max_degree + 1)
    coh = ExtCohomology(resolution, resolution.module)
    f = alg.field
    degrees, cocycles, lifts = [], [], []
    for n in range(1, max_degree + 1):
        products = []
        for a, G in zip(degrees, lifts):
            Y = coh.basis(n - a)
            if Y.shape[1]:
                products.append(f.matmul(coh.pullback(G.map(n - a)), Y))
        decomposable = coh.classes_span(n, np.concatenate(products, axis=1)) if products \
            else f.zeros((0, coh.dim(n)))
        new = complement_rows(decomposable, f.eye(coh.dim(n)), f)
        E = coh.basis(n)
        for row in new:
            phi = f.matmul(E, row)
            degrees.append(n)
            cocycles.append(phi)
            lifts.append(lift_chain_map(resolution, phi, n, cohomology=coh))
    return ExtGenerators(degrees, cocycles, lifts, coh)


def operator_window(alg: BasisAlgebra, m: FDModule, n: FDModule, ops, n0: int, n1: int,
                    resolution: MinimalResolution | None = None) -> GradedWindow:
    """Ext pieces in degrees ``n0 .. n1`` with the matrices of each chain operator.

    Operators act by precomposition on the resolution of ``m``; an operator
    of degree ``d`` gets matrices ``Ext^j -> Ext^{j + d}`` for ``j + d <= n1``.
    """
    if not 0 <= n0 <= n1:
        raise ValueError("need 0 <= n0 <= n1")
    if resolution is None:
        resolution = ops[0].resolution if ops else minimal_resolution(alg, m, n1 + 1)
    for op in ops:
        if op.resolution is not resolution:
            raise ValueError("operators must live on the resolution being windowed")
        if n1 - op.degree >= n0 and not op.defined_at(n1 - op.degree):
            raise RangeExceedsResolution(f"operator of degree {op.degree} is not defined up to {n1 - op.degree}")
    if resolution.length < n1 + 1:
        raise RangeExceedsResolution(f"window up to {n1} needs the resolution through degree {n1 + 1}")
    coh = ExtCohomology(resolution, n)
    dims = [coh.dim(j) for j in range(n0, n1 + 1)]
    bases = [coh.basis(j) for j in range(n0, n1 + 1)]
    wops = []
    for op in ops:
        mats = {j: coh.operator_matrix(op, j) for j in range(n0, n1 - op.degree + 1)}
        wops.append(WindowOperator(op.degree, mats))
    return GradedWindow(n0, n1, dims, wops, alg.field, bases)


def check_cocycle(coh: ExtCohomology, n: int, phi: np.ndarray) -> None:
    if phi.shape != (coh.cochain_dim(n),):
        raise NotACocycle(f"cochain has shape {phi.shape}, expected ({coh.cochain_dim(n)},)")
    if n + 1 <= coh.resolution.length and not coh.is_cocycle(n, phi):
        raise NotACocycle(f"cochain of degree {n} is not a cocycle")

