"""Minimal free resolutions over basis algebras.

Generators of a module ``K`` are lifts of a basis of ``K / JK``; for a local
algebra this gives the minimal resolution.  Over a non-local algebra we use
free (not projective) modules with the fewest possible generators in each
degree (found from the blocks of ``A / J``; a greedy choice is the fallback
over Q or large primes).  Differentials then need not land in ``J P``, so
minimality is only asserted for local algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import DimensionCap
from ..exactmath import complement_rows, kernel, rank, row_basis, solve
from .algebras import BasisAlgebra
from .free import FreeMap, free_left_multiply, module_expand
from .modules import FDModule
from .semisimple import quotient_lifts

ALGEBRA_DIM_CAP = 64
FREE_DIM_CAP = 20000
# seeded draws when choosing generators over a non-local algebra
COVER_SEED = 0
COVER_DRAWS = 500


@dataclass(eq=False)
class MinimalResolution:
    """``... -> P_2 -> P_1 -> P_0 -> M`` with ``P_n = A^{betti[n]}``.

    ``differentials[n - 1]`` is ``d_n : P_n -> P_{n-1}``; ``augmentation``
    holds the images in ``M`` of the generators of ``P_0``.
    """

    algebra: BasisAlgebra = dc_field(repr=False)
    module: FDModule = dc_field(repr=False)
    betti: list[int]
    augmentation: np.ndarray = dc_field(repr=False)
    differentials: list[FreeMap] = dc_field(repr=False)
    free_dim_cap: int = FREE_DIM_CAP
    _top_kernel: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def length(self) -> int:
        return len(self.betti) - 1

    @property
    def field(self):
        return self.algebra.field

    @property
    def is_minimal(self) -> bool:
        return self.algebra.is_local

    def differential(self, n: int) -> FreeMap:
        if not 1 <= n <= self.length:
            raise IndexError(f"no differential d_{n} (length {self.length})")
        return self.differentials[n - 1]

    def free_dim(self, n: int) -> int:
        return self.betti[n] * self.algebra.dim

    def augmentation_expanded(self) -> np.ndarray:
        return module_expand(self.module.action, self.augmentation, self.field)

    def top_kernel(self) -> tuple[np.ndarray, int]:
        """Basis (columns) of the kernel of the last map, with the rank of its free module."""
        if self._top_kernel is None:
            last = self.differentials[-1].expanded if self.differentials else self.augmentation_expanded()
            self._top_kernel = kernel(last, self.field)
        return self._top_kernel, self.betti[-1]

    def extend(self, n_max: int) -> "MinimalResolution":
        """Compute further degrees in place up to ``n_max``; returns ``self``."""
        while self.length < n_max:
            K, r = self.top_kernel()
            gens = _cover(self.algebra, K, r)
            b = gens.shape[1]
            if b * self.algebra.dim > self.free_dim_cap:
                raise DimensionCap(f"P_{self.length + 1} would have dimension {b * self.algebra.dim}")
            self.differentials.append(FreeMap(self.algebra, b, r, gens))
            self.betti.append(b)
            self._top_kernel = None
        return self

    def truncated(self, n: int) -> "MinimalResolution":
        if n > self.length:
            raise IndexError("cannot truncate beyond the computed length")
        return MinimalResolution(self.algebra, self.module, self.betti[: n + 1], self.augmentation,
                                 self.differentials[:n], self.free_dim_cap)

    # invariants

    def check_d_squared(self) -> bool:
        f = self.field
        if self.length >= 1:
            if np.any(f.matmul(self.augmentation_expanded(), self.differential(1).images)):
                return False
        for n in range(2, self.length + 1):
            if not self.differential(n - 1).compose(self.differential(n)).is_zero():
                return False
        return True

    def check_minimality(self) -> bool:
        alg = self.algebra
        Q = alg.radical_quotient
        for d in self.differentials:
            if d.images.size and np.any(self.field.reduce(d.entries.reshape(-1, alg.dim) @ Q)):
                return False
        return True

    def check_exactness(self) -> bool:
        """Augmentation onto; ``rank d_n + rank d_{n+1} = dim P_n`` below the top degree."""
        f = self.field
        ranks = [rank(self.augmentation_expanded(), f)]
        if ranks[0] != self.module.dim:
            return False
        ranks += [rank(d.expanded, f) for d in self.differentials]
        return all(ranks[n] + ranks[n + 1] == self.free_dim(n) for n in range(self.length))


def _generators(alg: BasisAlgebra, K: np.ndarray, JK: np.ndarray, act) -> np.ndarray:
    """Columns of ``K`` generating it as a module, given ``JK`` spanning ``J K``.

    ``act(a, V)`` multiplies the columns of ``V`` by the algebra element ``a``.
    Over a local algebra a basis of ``K / JK`` is already minimal.  Otherwise
    the work happens in the semisimple module ``T = K / JK``.  When the blocks
    of ``A / J`` are known the number of generators is the minimum
    ``max ceil(m_i / n_i)`` (``T`` holds ``m_i`` copies of the simple module of
    a block ``M_{n_i}(D)``), so the ranks of the resolution only depend on the
    isomorphism type of the module.
    """
    f = alg.field
    C = complement_rows(JK.T, K.T, f)
    t = C.shape[0]
    if t == 0 or alg.is_local:
        return C.T
    lifts = quotient_lifts(alg)
    M = np.concatenate([row_basis(JK.T, f) if JK.shape[1] else f.zeros((0, K.shape[0])), C], axis=0)
    images = np.concatenate([act(s, C.T) for s in lifts], axis=1)     # (s, i) at column s * t + i
    coords = solve(M.T, images, f)[M.shape[0] - t:]
    ops = [coords[:, s * t:(s + 1) * t] for s in range(len(lifts))]

    def generated(vecs):
        rows = [f.matmul(op, v) for v in vecs for op in ops]
        return rank(np.array(rows, dtype=f.dtype).reshape(len(rows), t), f) if rows else 0

    gens = _block_cover(alg, ops, t, generated) if alg.blocks is not None else None
    if gens is None:
        gens = _greedy_cover(f, t, generated)
    return f.matmul(C.T, np.array(gens, dtype=f.dtype).T)


def _block_cover(alg, ops, t, generated):
    """Minimal generating set of ``T`` from seeded random draws, or ``None`` if the draws run out."""
    f = alg.field
    counts = []
    for blk in alg.blocks:
        proj = f.reduce(sum(c * op for c, op in zip(blk.idempotent, ops)))
        counts.append((rank(proj, f) // blk.simple_dim, blk.multiplicity, blk.simple_dim))
    mu = max(-(-m // n) for m, n, _ in counts)
    rng = np.random.default_rng(COVER_SEED)
    gens, have = [], 0
    for j in range(mu):
        gain = sum((min(m, n * (j + 1)) - min(m, n * j)) * s for m, n, s in counts)
        for _ in range(COVER_DRAWS):
            v = f.array(rng.integers(0, f.p, size=t).tolist())
            if generated(gens + [v]) == have + gain:
                gens.append(v)
                have += gain
                break
        else:
            return None
    return gens if have == t else None


def _greedy_cover(f, t, generated):
    """Basis vectors added while they enlarge the span, then pairs merged while possible."""
    gens = []
    for i in range(t):
        e = f.zeros(t)
        e[i] = f(1)
        if generated(gens + [e]) > generated(gens):
            gens.append(e)
            if generated(gens) == t:
                break
    scalars = [f(c) for c in range(1, min(f.p, 8))] if f.is_finite else [f(c) for c in (1, 2, -1, 3)]
    merged = True
    while merged and len(gens) > 1:
        merged = False
        for a, b in itertools.combinations(range(len(gens)), 2):
            rest = [g for i, g in enumerate(gens) if i not in (a, b)]
            for c in scalars:
                g = f.reduce(gens[a] + c * gens[b])
                if generated(rest + [g]) == t:
                    gens, merged = rest + [g], True
                    break
            if merged:
                break
    return gens


def _cover(alg: BasisAlgebra, K: np.ndarray, rank_: int) -> np.ndarray:
    """Generators (columns) of the submodule of ``A^rank_`` spanned by the columns of ``K``."""
    f = alg.field
    if K.shape[1] == 0:
        return f.zeros((K.shape[0], 0))

    def act(a, V):
        return free_left_multiply(alg, a, V, rank_)

    JK = [act(r, K) for r in alg.radical_generators]
    JK = np.concatenate(JK, axis=1) if JK else f.zeros((K.shape[0], 0))
    return _generators(alg, K, JK, act)


def _module_cover(module: FDModule) -> np.ndarray:
    f = module.field
    alg = module.algebra
    d = module.dim
    if d == 0:
        return f.zeros((0, 0))

    def act(a, V):
        return f.matmul(module.act(a), V)

    JM = [module.act(r) for r in alg.radical_generators]
    JM = np.concatenate(JM, axis=1) if JM else f.zeros((d, 0))
    return _generators(alg, f.eye(d), JM, act)


def minimal_resolution(alg: BasisAlgebra, module: FDModule, n_max: int,
                       algebra_dim_cap: int = ALGEBRA_DIM_CAP,
                       free_dim_cap: int = FREE_DIM_CAP) -> MinimalResolution:
    """Resolve ``module`` through degree ``n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if alg.dim > algebra_dim_cap:
        raise DimensionCap(f"algebra dimension {alg.dim} exceeds cap {algebra_dim_cap}")
    if module.algebra is not alg:
        raise ValueError("module is over a different algebra")
    gens = _module_cover(module)
    res = MinimalResolution(alg, module, [gens.shape[1]], gens, [], free_dim_cap)
    return res.extend(n_max)
