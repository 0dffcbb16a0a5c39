"""Block structure of the semisimple quotient ``A / J`` over a prime field.

Over ``F_p`` the centre ``Z`` of ``B = A / J`` is a product of finite
fields, and Frobenius ``z -> z^p`` is ``F_p``-linear on it.  Its fixed
points form a subalgebra ``F_p^r`` spanned by the central primitive
idempotents, one per block ``M_n(D)`` of ``B``; they are split out by
``e -> e - (z e - c e)^(p - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from ..exactmath import complement_rows, kernel, rank, solve

# splitting loops over all of F_p; larger primes fall back to the greedy cover
MAX_SPLIT_PRIME = 64


@dataclass(frozen=True)
class Block:
    """One simple block ``M_n(D)`` of ``A / J``.

    ``idempotent`` has coordinates in the lift basis of ``A / J``;
    ``simple_dim`` is the dimension of the simple module and
    ``multiplicity`` is ``n``, the number of its copies in ``A / J``.
    """

    idempotent: np.ndarray
    simple_dim: int
    multiplicity: int


def quotient_lifts(alg) -> np.ndarray:
    """Rows of ``A`` lifting a basis of ``A / J``."""
    f = alg.field
    return complement_rows(alg.radical, f.eye(alg.dim), f)


def _quotient_mult(alg, L: np.ndarray) -> np.ndarray:
    f = alg.field
    b = L.shape[0]
    M = np.concatenate([alg.radical, L], axis=0)
    prods = np.tensordot(np.tensordot(L, alg.mult, axes=([1], [0])), L, axes=([1], [1]))  # (i, dim, j)
    prods = f.reduce(np.transpose(prods, (0, 2, 1)).reshape(b * b, alg.dim))
    coords = solve(M.T, prods.T, f)[alg.radical_dim:]
    return coords.T.reshape(b, b, b)


def semisimple_blocks(alg) -> list[Block] | None:
    """Blocks of ``A / J``, or ``None`` when the field is not a small prime field."""
    f = alg.field
    if not f.is_finite or f.p > MAX_SPLIT_PRIME:
        return None
    p = f.p
    L = quotient_lifts(alg)
    b = L.shape[0]
    C = _quotient_mult(alg, L)

    def mul(x, y):
        return f.reduce(np.tensordot(np.tensordot(x, C, axes=([0], [0])), y, axes=([0], [0])))

    def power(x, e, one):
        out, base = one, x
        while e:
            if e & 1:
                out = mul(out, base)
            base = mul(base, base)
            e >>= 1
        return out

    M = np.concatenate([alg.radical, L], axis=0)
    one = solve(M.T, alg.unit(), f)[alg.radical_dim:]
    # centre: z with z b_k = b_k z for every k
    comm = np.concatenate([f.reduce(C[:, k, :] - C[k, :, :]).T for k in range(b)], axis=0)
    Z = kernel(comm, f)
    frob = np.stack([solve(Z, power(Z[:, i], p, one), f) for i in range(Z.shape[1])], axis=1)
    fixed = f.matmul(Z, kernel(f.reduce(frob - f.eye(Z.shape[1])), f))
    idems = [one]
    for j in range(fixed.shape[1]):
        z = fixed[:, j]
        split = []
        for e in idems:
            ze = mul(z, e)
            for c in range(p):
                w = f.reduce(ze - c * e)
                part = f.reduce(e - power(w, p - 1, e))
                if np.any(part):
                    split.append(part)
        idems = split
    blocks = []
    for e in idems:
        d = rank(np.stack([mul(e, Z[:, i]) for i in range(Z.shape[1])]), f)
        dim_block = rank(np.stack([mul(e, row) for row in f.eye(b)]), f)
        n = isqrt(dim_block // d)
        if n * n * d != dim_block:
            return None
        blocks.append(Block(e, n * d, n))
    return blocks
