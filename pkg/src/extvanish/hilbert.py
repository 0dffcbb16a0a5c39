"""Rational generating functions and quasi-polynomials for dimension windows.

A window ``a_s, a_{s+1}, ...`` is read as the power series
``F(z) = sum_i a_{s+i} z^i``.  If ``F = g(z) / prod(1 - z^{d_i})`` then,
after splitting off the polynomial part, ``a_n`` agrees with a polynomial
``g_j(n)`` on each residue class ``n = j mod d`` (``d = lcm d_i``) for all
large ``n``.  Everything here is exact; residues and thresholds refer to
absolute degrees ``n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import EmptyDegrees, FitContradiction, InsufficientData, NotRational
from .exactmath import (
    QQ,
    Poly,
    SeriesWindow,
    denominator_poly,
    expand_coefficients,
    integer_roots,
    poly_divmod,
    poly_gcd,
    series_div,
    solve,
)

DEFAULT_GUARD = 8
MIN_GUARD = 4


def lcm_degrees(degrees: Sequence[int]) -> int:
    degrees = list(degrees)
    if not degrees:
        raise EmptyDegrees("need at least one degree")
    if any(int(d) != d or d < 1 for d in degrees):
        raise ValueError("degrees must be positive integers")
    return lcm(*degrees)


@dataclass(frozen=True)
class RationalGF:
    """``numerator / prod(1 - z^d)`` for the window starting in degree ``start``."""

    numerator: Poly
    denominator_degrees: tuple[int, ...]
    start: int = 0

    def __post_init__(self):
        if not self.numerator.is_integral():
            raise ValueError("numerator must have integer coefficients")
        object.__setattr__(self, "denominator_degrees", tuple(int(d) for d in self.denominator_degrees))

    @property
    def denominator(self) -> Poly:
        return denominator_poly(self.denominator_degrees)

    def expand(self, n_terms: int) -> list:
        """Coefficients of the series (relative indices ``0 .. n_terms - 1``)."""
        return expand_coefficients(self.numerator, self.denominator_degrees, n_terms)

    def same_function(self, other: "RationalGF") -> bool:
        """Cross-multiplication identity ``g1 * Q2 == g2 * Q1``."""
        return self.numerator * other.denominator == other.numerator * self.denominator

    def to_dict(self) -> dict:
        return {"numerator": self.numerator.integer_coeffs() if self.numerator else [],
                "denominator_degrees": list(self.denominator_degrees), "start": self.start}

    @classmethod
    def from_dict(cls, data) -> "RationalGF":
        return cls(Poly(data["numerator"]), tuple(data["denominator_degrees"]), data.get("start", 0))


@dataclass(frozen=True)
class ReducedGF:
    """``u(z) + p(z) / q(z)`` with ``deg p < deg q``, ``gcd(p, q) = 1`` and ``q(0) = 1``."""

    poly_part: Poly
    numerator: Poly
    denominator: Poly
    degrees: tuple[int, ...] = ()
    start: int = 0

    def expand(self, n_terms: int) -> list[Fraction]:
        tail = series_div(self.numerator, self.denominator, n_terms)
        return [tail[i] + self.poly_part[i] for i in range(n_terms)]

    def to_dict(self) -> dict:
        return {"poly_part": self.poly_part.to_json(), "numerator": self.numerator.to_json(),
                "denominator": self.denominator.to_json(), "degrees": list(self.degrees), "start": self.start}

    @classmethod
    def from_dict(cls, data) -> "ReducedGF":
        return cls(Poly.from_json(data["poly_part"]), Poly.from_json(data["numerator"]),
                   Poly.from_json(data["denominator"]), tuple(data["degrees"]), data.get("start", 0))


@dataclass(frozen=True)
class QuasiPolynomial:
    """``value(n) = components[n mod period](n)`` for ``n >= valid_from``."""

    period: int
    components: tuple[Poly, ...]
    valid_from: int

    def __post_init__(self):
        if self.period < 1 or len(self.components) != self.period:
            raise ValueError("need one component per residue class")

    def value(self, n: int) -> Fraction:
        return self.components[n % self.period](n)

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.components)

    def minimal_period(self) -> int:
        d = self.period
        for e in range(1, d + 1):
            if d % e == 0 and all(self.components[j] == self.components[j % e] for j in range(d)):
                return e
        return d

    def to_dict(self) -> dict:
        return {"period": self.period, "components": [g.to_json() for g in self.components],
                "valid_from": self.valid_from}

    @classmethod
    def from_dict(cls, data) -> "QuasiPolynomial":
        return cls(data["period"], tuple(Poly.from_json(c) for c in data["components"]), data["valid_from"])


class Verdict(str, enum.Enum):
    EVENTUALLY_ZERO = "EventuallyZero"
    PERIODIC_NONVANISHING = "PeriodicNonvanishing"


PROVENANCES = ("quasi-polynomial", "regular-element", "both")


@dataclass(frozen=True)
class VanishingReport:
    """Either eventually zero, or nonzero exactly on ``nonvanishing_residues`` mod ``period`` from ``m0`` on."""

    verdict: Verdict
    period: int
    nonvanishing_residues: tuple[int, ...]
    m0: int
    provenance: str = "quasi-polynomial"
    minimal_period: int | None = None
    notes: tuple[str, ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "verdict", Verdict(self.verdict))
        object.__setattr__(self, "nonvanishing_residues", tuple(sorted(self.nonvanishing_residues)))
        object.__setattr__(self, "notes", tuple(self.notes))
        if (self.verdict is Verdict.EVENTUALLY_ZERO) != (not self.nonvanishing_residues):
            raise ValueError("verdict must be EventuallyZero exactly when no residue class is nonvanishing")
        if any(not 0 <= j < self.period for j in self.nonvanishing_residues):
            raise ValueError("residues must lie in [0, period)")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def expected_nonzero(self, n: int) -> bool:
        return n % self.period in self.nonvanishing_residues

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "period": self.period,
                "nonvanishing_residues": list(self.nonvanishing_residues), "m0": self.m0,
                "provenance": self.provenance, "minimal_period": self.minimal_period, "notes": list(self.notes)}

    @classmethod
    def from_dict(cls, data) -> "VanishingReport":
        return cls(Verdict(data["verdict"]), data["period"], tuple(data["nonvanishing_residues"]), data["m0"],
                   data.get("provenance", "quasi-polynomial"), data.get("minimal_period"),
                   tuple(data.get("notes", ())))


def fit_numerator(window: SeriesWindow, degrees: Sequence[int], guard: int = DEFAULT_GUARD) -> RationalGF:
    """Recover ``g(z)`` with ``window = g / prod(1 - z^d)``.

    The window times ``prod(1 - z^d)`` is computed exactly up to the window
    length; the fit is accepted when its last ``guard`` coefficients vanish.
    """
    if guard < MIN_GUARD:
        raise ValueError(f"guard must be at least {MIN_GUARD}")
    degrees = tuple(int(d) for d in degrees)
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    L = len(window)
    if L < sum(degrees) + guard:
        raise InsufficientData(f"window of length {L} is shorter than sum(degrees) + guard = {sum(degrees) + guard}")
    c = list(window.terms)
    for d in degrees:
        # multiply by (1 - z^d), truncated to the window length
        for i in range(L - 1, d - 1, -1):
            c[i] -= c[i - d]
    tail = c[L - guard:]
    if any(tail):
        first = next(i for i, x in enumerate(tail) if x) + L - guard
        raise NotRational(f"coefficient {first} of window * prod(1 - z^d) for degrees {list(degrees)} is nonzero")
    return RationalGF(Poly(c), degrees, window.start)


def reduce_gf(gf: RationalGF) -> ReducedGF:
    Q = gf.denominator
    u, r = poly_divmod(gf.numerator, Q)
    if r.is_zero():
        return ReducedGF(u, Poly(), Poly([1]), gf.denominator_degrees, gf.start)
    g = poly_gcd(r, Q)
    p, q = poly_divmod(r, g)[0], poly_divmod(Q, g)[0]
    c = q[0]
    return ReducedGF(u, Poly(x / c for x in p.coeffs), Poly(x / c for x in q.coeffs), gf.denominator_degrees, gf.start)


def _interpolate(xs: list[int], ys: list[Fraction]) -> Poly:
    if not xs:
        return Poly()
    V = QQ.array([[Fraction(x) ** k for k in range(len(xs))] for x in xs])
    coeffs = solve(V, QQ.array(ys), QQ)
    return Poly(coeffs)


def quasi_polynomial(red: ReducedGF, d: int, window: SeriesWindow) -> QuasiPolynomial:
    """Per-residue polynomials of degree below ``len(red.degrees)`` matching the reduced function.

    The proper part ``p/q`` has quasi-polynomial coefficients from index 0,
    so each class is interpolated on the first ``t`` of its indices of
    ``p/q``; the result holds for relative indices past ``deg u`` and is
    checked against every window term there.
    """
    if d < 1:
        raise ValueError("period must be positive")
    if red.degrees and any(d % e for e in red.degrees):
        raise ValueError(f"period {d} is not a multiple of every degree in {list(red.degrees)}")
    t = len(red.degrees)
    s = window.start
    rel_valid = red.poly_part.degree + 1
    if len(window) <= rel_valid:
        raise InsufficientData("window ends before the quasi-polynomial range begins")
    coeffs = series_div(red.numerator, red.denominator, d * t) if t else []
    rel = []
    for r in range(d):
        xs = [r + d * k for k in range(t)]
        rel.append(_interpolate(xs, [coeffs[x] for x in xs]))
    comps = [Poly()] * d
    for r in range(d):
        comps[(s + r) % d] = rel[r].shift(-s) if s else rel[r]
    qp = QuasiPolynomial(d, tuple(comps), s + rel_valid)
    for n in range(qp.valid_from, window.stop):
        if qp.value(n) != window[n]:
            raise FitContradiction(f"quasi-polynomial predicts {qp.value(n)} at degree {n}, window has {window[n]}")
    return qp


def classify(qp: QuasiPolynomial, provenance: str = "quasi-polynomial") -> VanishingReport:
    """Residues with a nonzero component; ``m0`` clears every nonnegative integer root."""
    residues = tuple(j for j, g in enumerate(qp.components) if not g.is_zero())
    if not residues:
        return VanishingReport(Verdict.EVENTUALLY_ZERO, qp.period, (), qp.valid_from, provenance, qp.minimal_period())
    m0 = qp.valid_from
    for j in residues:
        roots = [x for x in integer_roots(qp.components[j]) if x >= 0]
        if roots:
            m0 = max(m0, max(roots) + 1)
    return VanishingReport(Verdict.PERIODIC_NONVANISHING, qp.period, residues, m0, provenance, qp.minimal_period())
