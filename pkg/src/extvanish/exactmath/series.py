"""Truncated power series and dimension windows."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly


@dataclass(frozen=True)
class SeriesWindow:
    """Consecutive dimensions ``terms[i] = dim`` of the piece in degree ``start + i``."""

    start: int
    terms: tuple[int, ...]

    def __init__(self, start: int, terms: Iterable[int]):
        terms = tuple(int(t) for t in terms)
        if not terms:
            raise ValueError("a series window needs at least one term")
        if any(t < 0 for t in terms):
            raise ValueError("dimensions must be nonnegative")
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)

    @property
    def stop(self) -> int:
        """One past the last degree."""
        return self.start + len(self.terms)

    def __getitem__(self, n: int) -> int:
        """Dimension in absolute degree ``n``."""
        if not self.start <= n < self.stop:
            raise IndexError(f"degree {n} outside window [{self.start}, {self.stop})")
        return self.terms[n - self.start]

    def degrees(self) -> range:
        return range(self.start, self.stop)

    def slice(self, lo: int, hi: int | None = None) -> "SeriesWindow":
        """Sub-window on absolute degrees ``[lo, hi)``."""
        hi = self.stop if hi is None else hi
        return SeriesWindow(lo, self.terms[lo - self.start: hi - self.start])

    def scaled(self, k: int) -> "SeriesWindow":
        return SeriesWindow(self.start, (k * t for t in self.terms))

    def to_json(self) -> dict:
        return {"start": self.start, "terms": list(self.terms)}

    @classmethod
    def from_json(cls, data) -> "SeriesWindow":
        return cls(data["start"], data["terms"])


def denominator_poly(degrees: Sequence[int]) -> Poly:
    """``prod(1 - z**d)`` over ``degrees``."""
    out = Poly([1])
    for d in degrees:
        out = out * Poly.one_minus_z_power(d)
    return out


def expand_coefficients(numerator: Poly, denominator_degrees: Sequence[int], n_terms: int) -> list:
    """First ``n_terms`` coefficients of ``numerator / prod(1 - z**d)`` (may be negative)."""
    if n_terms < 1:
        raise ValueError("n_terms must be at least 1")
    if any(d < 1 for d in denominator_degrees):
        raise ValueError("denominator degrees must be positive")
    c = [numerator[i] for i in range(n_terms)]
    for d in denominator_degrees:
        # multiply by 1/(1 - z^d): running sums with stride d
        for i in range(d, n_terms):
            c[i] += c[i - d]
    return [int(x) if isinstance(x, Fraction) and x.denominator == 1 else x for x in c]


def series_expand(numerator: Poly, denominator_degrees: Sequence[int], n_terms: int) -> SeriesWindow:
    """The expansion as a dimension window starting in degree 0."""
    return SeriesWindow(0, expand_coefficients(numerator, denominator_degrees, n_terms))


def series_div(numerator: Poly, denominator: Poly, n_terms: int) -> list[Fraction]:
    """First ``n_terms`` coefficients of ``numerator / denominator``; needs ``denominator(0) != 0``."""
    q0 = denominator[0]
    if q0 == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    out: list[Fraction] = []
    qs = denominator.coeffs
    for n in range(n_terms):
        acc = numerator[n]
        for k in range(1, min(n, len(qs) - 1) + 1):
            acc -= qs[k] * out[n - k]
        out.append(acc / q0)
    return out
