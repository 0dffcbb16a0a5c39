"""Jacobson radical of an algebra given by structure constants.

Over Q the radical is the kernel of the trace form ``(a, b) -> Tr(L_ab)``.
Over F_p that kernel can be too big, so we use the iterated trace forms of
Ronyai / Cohen-Ivanyos-Wales: with ``g_i(x) = Tr(x~^(p^i)) / p^i mod p``
(``x~`` an integer lift of the left multiplication matrix), set
``I_{-1} = A`` and ``I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}``; then
``I_l`` is the radical for ``l = floor(log_p dim A)``.
"""

from __future__ import annotations

import numpy as np

from ..errors import UnsupportedAlgebra
from ..exactmath import FieldSpec, kernel, row_basis


def left_mult_matrices(mult: np.ndarray) -> np.ndarray:
    """``L[i]`` is the matrix of ``x -> b_i x`` (columns are images of basis vectors)."""
    return np.ascontiguousarray(np.transpose(mult, (0, 2, 1)))


def _products(mult: np.ndarray, rows: np.ndarray, field: FieldSpec) -> np.ndarray:
    """``out[s, t] = rows[s] * b_t`` as coordinate vectors."""
    return field.reduce(np.tensordot(rows, mult, axes=([1], [0])))


def _matpow_mod(x: np.ndarray, e: int, modulus: int) -> np.ndarray:
    n = x.shape[0]
    result = np.eye(n, dtype=x.dtype)
    base = x % modulus
    while e:
        if e & 1:
            result = (result @ base) % modulus
        e >>= 1
        if e:
            base = (base @ base) % modulus
    return result


def _trace_functional(mult: np.ndarray, L: np.ndarray, field: FieldSpec, i: int):
    p = field.p
    pe = p ** i
    modulus = pe * p
    dtype = np.int64 if modulus < (1 << 20) else object

    def g(x: np.ndarray) -> int:
        X = np.tensordot(np.asarray(x, dtype=dtype), np.asarray(L, dtype=dtype), axes=([0], [0]))
        X = X % p  # canonical lift in [0, p)
        tr = int(np.trace(_matpow_mod(X, pe, modulus))) % modulus
        if tr % pe:
            raise UnsupportedAlgebra("trace functional not divisible; radical computation failed")
        return (tr // pe) % p

    return g


def compute_radical(mult: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Rows spanning the Jacobson radical, in reduced echelon form."""
    n = mult.shape[0]
    L = left_mult_matrices(mult)
    if field.p == 0:
        traces = np.array([sum(L[k][j, j] for j in range(n)) for k in range(n)], dtype=object)
        T = np.tensordot(mult, traces, axes=([2], [0]))  # T[i, j] = Tr(L_{b_i b_j})
        J = kernel(np.asarray(T, dtype=object).T, field).T
        J = row_basis(J, field) if J.shape[0] else J
    else:
        p = field.p
        levels = 0
        while p ** (levels + 1) <= n:
            levels += 1
        J = field.eye(n)
        for i in range(levels + 1):
            if J.shape[0] == 0:
                break
            g = _trace_functional(mult, L, field, i)
            prods = _products(mult, J, field)
            G = np.array([[g(prods[s, t]) for t in range(n)] for s in range(J.shape[0])], dtype=object)
            lam = kernel(field.array(G).T, field)  # combinations of J rows killed by every b
            if lam.shape[1] == 0:
                J = J[:0]
                break
            J = row_basis(field.reduce(lam.T @ J), field)
    if not is_nilpotent_ideal(mult, J, field):
        raise UnsupportedAlgebra("computed radical is not nilpotent")
    return J


def ideal_product(mult: np.ndarray, I: np.ndarray, K: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Echelon rows spanning ``I * K`` (products of row vectors)."""
    n = mult.shape[0]
    if I.shape[0] == 0 or K.shape[0] == 0:
        return field.zeros((0, n))
    prods = field.reduce(np.tensordot(np.tensordot(I, mult, axes=([1], [0])), K, axes=([1], [1])))
    # prods[s, k, t] = coordinate k of I_s * K_t
    vecs = np.transpose(prods, (0, 2, 1)).reshape(-1, n)
    return row_basis(vecs, field)


def is_nilpotent_ideal(mult: np.ndarray, J: np.ndarray, field: FieldSpec) -> bool:
    power = J
    for _ in range(mult.shape[0] + 1):
        if power.shape[0] == 0:
            return True
        nxt = ideal_product(mult, power, J, field)
        if nxt.shape[0] == power.shape[0]:
            return False
        power = nxt
    return power.shape[0] == 0
