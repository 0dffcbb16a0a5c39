"""Chain self-maps of resolutions: cocycle lifts and degree-2 operators."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..errors import InconsistentSystem, LiftObstruction
from ..exactmath import solve
from .free import FreeMap
from .resolution import MinimalResolution


@dataclass(eq=False)
class ChainOperator:
    """Maps ``P_{n + degree} -> P_n`` for ``n = start, start + 1, ...``.

    ``maps[i]`` is the component at ``n = start + i``.
    """

    degree: int
    resolution: MinimalResolution = dc_field(repr=False)
    maps: list[FreeMap] = dc_field(repr=False)
    start: int = 0

    @property
    def stop(self) -> int:
        """One past the last ``n`` with a stored component."""
        return self.start + len(self.maps)

    def defined_at(self, n: int) -> bool:
        return self.start <= n < self.stop

    def map(self, n: int) -> FreeMap:
        if not self.defined_at(n):
            raise IndexError(f"component {n} not stored (range {self.start}..{self.stop - 1})")
        return self.maps[n - self.start]

    def check(self) -> bool:
        """``d_n o F_n == F_{n-1} o d_{n + degree}`` on every stored pair."""
        res = self.resolution
        for n in range(max(self.start + 1, 1), self.stop):
            lhs = res.differential(n).compose(self.map(n))
            rhs = self.map(n - 1).compose(res.differential(n + self.degree))
            if lhs != rhs:
                return False
        return True

    def compose(self, other: "ChainOperator") -> "ChainOperator":
        """``self o other``: components ``self_n o other_{n + self.degree}``."""
        if other.resolution is not self.resolution:
            raise ValueError("operators live on different resolutions")
        start = max(self.start, other.start - self.degree)
        maps = []
        n = start
        while self.defined_at(n) and other.defined_at(n + self.degree):
            maps.append(self.map(n).compose(other.map(n + self.degree)))
            n += 1
        return ChainOperator(self.degree + other.degree, self.resolution, maps, start)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)


def lift_chain_map(res: MinimalResolution, cocycle: np.ndarray, degree: int,
                   cohomology=None, upto: int | None = None) -> ChainOperator:
    """Lift a degree-``degree`` cocycle ``P_degree -> M`` to a chain map.

    ``M`` is the resolved module.  Components are built for
    ``n = 0 .. upto`` (default: as far as the resolution allows) by solving
    ``d_n Y = F_{n-1} o d_{n + degree}``.
    """
    from .ext import ExtCohomology, check_cocycle

    if cohomology is None or cohomology.target is not res.module:
        cohomology = ExtCohomology(res, res.module)
    cocycle = np.asarray(cocycle, dtype=res.field.dtype)
    check_cocycle(cohomology, degree, cocycle)
    alg = res.algebra
    f = res.field
    last = res.length - degree if upto is None else upto
    if last < 0 or last + degree > res.length:
        raise ValueError("resolution too short for the requested lift")
    b = res.betti
    rhs = cocycle.reshape(b[degree], res.module.dim).T
    try:
        Y = solve(res.augmentation_expanded(), rhs, f)
        maps = [FreeMap(alg, b[degree], b[0], Y)]
        for n in range(1, last + 1):
            target = maps[-1].compose(res.differential(n + degree))
            Y = solve(res.differential(n).expanded, target.images, f)
            maps.append(FreeMap(alg, b[n + degree], b[n], Y))
    except InconsistentSystem as exc:  # pragma: no cover - exactness guarantees a solution
        raise LiftObstruction(f"lifting failed at degree {len(maps)}") from exc
    return ChainOperator(degree, res, maps)


def identity_operator(res: MinimalResolution) -> ChainOperator:
    return ChainOperator(0, res, [FreeMap.identity(res.algebra, b) for b in res.betti])


def _is_hypersurface(alg) -> bool:
    return alg.name == "trunc-poly" and alg.params.get("c") == 1


def _poly_matmul(P: np.ndarray, Q: np.ndarray, field) -> np.ndarray:
    """Product of polynomial matrices, coefficients kept in full (no truncation)."""
    s, t, a = P.shape
    _, r, b = Q.shape
    out = field.zeros((s, r, a + b - 1))
    for i in range(a):
        for j in range(b):
            out[:, :, i + j] += P[:, :, i] @ Q[:, :, j]
    return field.reduce(out)


def eisenbud_operator(res: MinimalResolution) -> ChainOperator:
    """Degree-2 operator for ``k[x]/(x^a)``: lift ``d`` to ``k[x]`` and divide ``d o d`` by ``x^a``.

    With ``D`` the lift, ``D^2 = x^a T`` and ``T`` commutes with ``D``
    exactly, so ``T`` reduced mod ``x^a`` is a chain self-map of degree 2.
    """
    alg = res.algebra
    if not _is_hypersurface(alg):
        raise ValueError("degree-2 operators are built only for k[x]/(x^a)")
    if res.length < 2:
        raise ValueError("resolution too short")
    a = alg.dim
    f = alg.field
    maps = []
    for n in range(0, res.length - 1):
        # entries are coefficient vectors over the monomials 1, x, ..., x^(a-1)
        D1 = res.differential(n + 1).entries
        D2 = res.differential(n + 2).entries
        prod = _poly_matmul(D1, D2, f)
        if np.any(prod[:, :, :a]):
            raise LiftObstruction("lifted differentials do not square into (x^a)")
        T = f.zeros(prod.shape[:2] + (a,))
        high = prod[:, :, a:]
        T[:, :, : high.shape[2]] = high
        # images[h * a + i, g] = T[h, g, i]
        images = np.transpose(T, (0, 2, 1)).reshape(-1, T.shape[1])
        maps.append(FreeMap(alg, res.betti[n + 2], res.betti[n], np.ascontiguousarray(images)))
    return ChainOperator(2, res, maps)


@dataclass(frozen=True)
class NotPeriodic:
    """Returned by :func:`detect_periodicity` when no period-2 operator is found."""

    reason: str

    def __bool__(self):
        return False


def detect_periodicity(res: MinimalResolution):
    """Degree-2 operator for an eventually 2-periodic resolution, else :class:`NotPeriodic`.

    For ``k[x]/(x^a)`` the lifted-square operator is returned.  Otherwise
    the tail must repeat literally, ``d_{n+2} == d_n`` for ``n > s``, and the
    operator is the identity ``P_{n+2} -> P_n`` for ``n >= s``.
    """
    if res.length < 4:
        raise ValueError("periodicity detection needs a resolution of length at least 4")
    if _is_hypersurface(res.algebra):
        return eisenbud_operator(res)
    b = res.betti
    L = res.length
    s = L - 1
    # grow the tail downwards; starting at s - 1 needs b_{s+1} == b_{s-1}
    # and (when d_{s+2} exists) d_s == d_{s+2}
    while s >= 1 and b[s + 1] == b[s - 1] and (s + 2 > L or res.differential(s + 2) == res.differential(s)):
        s -= 1
    # require at least two verified repetitions d_{n+2} == d_n, n in (s, L-2]
    if L - 2 - s < 2:
        return NotPeriodic("Betti numbers or differentials do not repeat with period 2")
    maps = [FreeMap.identity(res.algebra, b[n]) for n in range(s, L - 1)]
    return ChainOperator(2, res, maps, start=s)
