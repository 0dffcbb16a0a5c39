"""Ground fields: prime fields F_p and the rationals.

Elements of F_p are plain ints in ``[0, p)``; rationals are ``Fraction``.
Matrices are numpy arrays, ``int64`` for small primes and ``object``
otherwise, so every operation stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

# p**2 times a few million inner-product terms must fit in int64
_INT64_PRIME_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either ``FieldSpec(p)`` for F_p or ``FieldSpec(0)`` for Q."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime-field"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def dtype(self):
        if self.p and self.p < _INT64_PRIME_LIMIT:
            return np.int64
        return object

    def __str__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # scalars

    def __call__(self, x: Any):
        """Canonical representative of ``x``."""
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def neg(self, x):
        return self(-x)

    def elements(self):
        if not self.p:
            raise ValueError("QQ is infinite")
        return range(self.p)

    # arrays

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if self.p:
            out = np.vectorize(self, otypes=[object])(arr) if arr.size else arr
            return np.asarray(out, dtype=self.dtype).reshape(arr.shape)
        if arr.size:
            arr = np.vectorize(Fraction, otypes=[object])(arr)
        return arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.p:
            return arr % self.p
        return arr

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            z = np.empty(shape, dtype=object)
            z.fill(Fraction(0) if self.p == 0 else 0)
            return z
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        e = self.zeros((n, n))
        for i in range(n):
            e[i, i] = self(1)
        return e

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a @ b)


GF = FieldSpec
QQ = FieldSpec(0)
