"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable

from ..errors import BothZero, DivisionByZeroPoly


class Poly:
    """Immutable polynomial, coefficients lowest degree first.

    >>> Poly([1, 0, 1]) * Poly([1, -1])
    Poly([1, -1, 1, -1])
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def one_minus_z_power(cls, d: int) -> "Poly":
        """``1 - z**d``."""
        return cls([1] + [0] * (d - 1) + [-1])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        def fmt(c):
            return str(c.numerator) if c.denominator == 1 else f"Fraction({c.numerator}, {c.denominator})"
        return "Poly([" + ", ".join(fmt(c) for c in self.coeffs) + "])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mon and c == 1:
                s = mon
            elif mon and c == -1:
                s = "-" + mon
            else:
                s = f"{c}*{mon}" if mon else str(c)
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    # arithmetic

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        return poly_divmod(self, _coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, _coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, _coerce(other))[1]

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return Poly(c / lead for c in self.coeffs)

    def shift(self, s) -> "Poly":
        """The polynomial ``x -> self(x + s)``."""
        out = Poly()
        base = Poly([s, 1])
        for c in reversed(self.coeffs):
            out = out * base + Poly([c])
        return out

    def truncate(self, n: int) -> "Poly":
        return Poly(self.coeffs[:n])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        """Coefficients scaled by the lcm of their denominators."""
        den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return [int(c * den) for c in self.coeffs]

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls(Fraction(c) for c in data)


def _coerce(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with ``a = q*b + r`` and ``deg r < deg b``."""
    if b.is_zero():
        raise DivisionByZeroPoly("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lead = b.coeffs[-1]
    if len(rem) - 1 < db:
        return Poly(), a
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] / lead
        quot[k] = c
        if c:
            for i, bc in enumerate(b.coeffs):
                rem[k + i] -= c * bc
    return Poly(quot), Poly(rem[:db])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (Euclid over Q)."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def integer_roots(p: Poly) -> list[int]:
    """All integer roots of a nonzero polynomial, sorted."""
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    cs = p.integer_coeffs()
    roots = []
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots.append(0)
    cs = cs[k:]
    a0, an = cs[0], cs[-1]
    if len(cs) == 1:
        return roots
    # Cauchy bound on |root|
    bound = 1 + max(abs(Fraction(c, an)) for c in cs[:-1])
    limit = int(bound)
    if limit * limit <= abs(a0):
        candidates = [d for d in range(1, limit + 1) if a0 % d == 0]
    else:
        candidates = [d for d in _divisors(abs(a0)) if d <= limit]
    for d in candidates:
        for r in (d, -d):
            if _eval_int(cs, r) == 0:
                roots.append(r)
    return sorted(roots)


def _eval_int(cs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f * f != n:
                large.append(n // f)
        f += 1
    return small + large[::-1]
