"""Finite-dimensional algebras given by a basis and structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from ..errors import BadCommutator, NotAGroup, NotAnAlgebra, OverflowGuard, SemisimpleCase
from ..exactmath import FieldSpec, complement_rows, kernel, row_basis
from .radical import compute_radical, ideal_product, is_nilpotent_ideal, left_mult_matrices

CONSTRUCTOR_DIM_CAP = 4096


@dataclass(frozen=True, eq=False)
class BasisAlgebra:
    """Associative unital algebra ``A`` with basis ``b_0, ..., b_{dim-1}``.

    ``mult[i, j]`` is the coordinate vector of ``b_i * b_j``.  ``radical``
    holds rows spanning the Jacobson radical ``J``.  ``augmentation`` is a
    functional ``A -> k`` that is an algebra map, when one is known (group
    algebras, local algebras).
    """

    field: FieldSpec
    mult: np.ndarray = dc_field(repr=False)
    labels: tuple[str, ...]
    unit_index: int
    radical: np.ndarray = dc_field(repr=False)
    name: str = "algebra"
    params: dict = dc_field(default_factory=dict)
    augmentation: np.ndarray | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        for arr in (self.mult, self.radical):
            arr.flags.writeable = False
        if self.augmentation is None and self.is_local:
            aug = self.radical_quotient[:, 0]
            aug = self.field.reduce(aug * self.field.inv(aug[self.unit_index]))
            object.__setattr__(self, "augmentation", aug)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def basis_labels(self) -> tuple[str, ...]:
        return self.labels

    @property
    def structure_constants(self) -> np.ndarray:
        return self.mult

    @property
    def characteristic(self) -> int:
        return self.field.p

    @property
    def radical_dim(self) -> int:
        return self.radical.shape[0]

    @property
    def is_local(self) -> bool:
        return self.radical_dim == self.dim - 1

    @cached_property
    def radical_basis(self) -> tuple[int, ...] | None:
        """Indices of basis elements spanning ``J`` when ``J`` is spanned by basis elements."""
        idx = []
        for row in self.radical:
            nz = np.flatnonzero(row)
            if nz.size != 1:
                return None
            idx.append(int(nz[0]))
        return tuple(sorted(idx))

    @cached_property
    def left_mult(self) -> np.ndarray:
        return left_mult_matrices(self.mult)

    @cached_property
    def radical_quotient(self) -> np.ndarray:
        """Columns are functionals vanishing on ``J``: ``a in J`` iff ``a @ Q == 0``."""
        if self.radical_dim == 0:
            return self.field.eye(self.dim)
        return kernel(self.radical, self.field)

    @cached_property
    def radical_generators(self) -> np.ndarray:
        """Rows lifting a basis of ``J / J^2``; they generate ``J`` as a right ideal."""
        J2 = ideal_product(self.mult, self.radical, self.radical, self.field)
        return complement_rows(J2, self.radical, self.field)

    @cached_property
    def blocks(self):
        """Simple blocks of ``A / J`` (see :mod:`.semisimple`), or ``None`` if not computable."""
        from .semisimple import semisimple_blocks

        return semisimple_blocks(self)

    def element(self, coords) -> np.ndarray:
        return self.field.array(coords)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field(1)
        return v

    def unit(self) -> np.ndarray:
        return self.basis_vector(self.unit_index)

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.field.reduce(np.tensordot(np.tensordot(a, self.mult, axes=([0], [0])), b, axes=([0], [0])))

    def left_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> a x``."""
        return self.field.reduce(np.tensordot(a, self.left_mult, axes=([0], [0])))

    def in_radical(self, a: np.ndarray) -> bool:
        return not np.any(self.field.reduce(np.asarray(a) @ self.radical_quotient))

    def check(self) -> None:
        """Raise :class:`NotAnAlgebra` unless associative with two-sided unit and nilpotent radical."""
        C = self.mult
        f = self.field
        left = f.reduce(np.tensordot(C, C, axes=([2], [0])))    # (b_i b_j) b_k
        right = f.reduce(np.tensordot(C, C, axes=([2], [1])))   # [j, k, i, m] = b_i (b_j b_k)
        right = np.transpose(right, (2, 0, 1, 3))
        if np.any(left != right):
            raise NotAnAlgebra("multiplication is not associative")
        e = self.unit_index
        eye = f.eye(self.dim)
        if np.any(C[e] != eye) or np.any(C[:, e, :] != eye):
            raise NotAnAlgebra("unit does not act as identity")
        if not is_nilpotent_ideal(C, self.radical, f):
            raise NotAnAlgebra("radical is not nilpotent")

    def __repr__(self):
        return f"BasisAlgebra({self.name}, dim={self.dim}, field={self.field})"


def _index_rows(field: FieldSpec, dim: int, idx) -> np.ndarray:
    rows = field.zeros((len(idx), dim))
    for r, i in enumerate(idx):
        rows[r, i] = field(1)
    return rows


def _monomial_label(exps, names) -> str:
    parts = []
    for e, x in zip(exps, names):
        if e == 1:
            parts.append(x)
        elif e > 1:
            parts.append(f"{x}^{e}")
    return "*".join(parts) or "1"


def make_quantum_ci(c: int, a: int, q, field: FieldSpec, cap: int = CONSTRUCTOR_DIM_CAP) -> BasisAlgebra:
    """``k<x_1..x_c> / (x_i^a, x_i x_j - q x_j x_i for i < j)`` on ordered monomials."""
    if c < 1 or a < 2:
        raise ValueError("need c >= 1 and a >= 2")
    if a ** c > cap:
        raise OverflowGuard(f"dimension {a}^{c} exceeds cap {cap}")
    q = field(q)
    if q == 0:
        raise BadCommutator("q must be nonzero")
    if field(q ** a if field.p == 0 else pow(int(q), a, field.p)) != field(1):
        raise BadCommutator(f"q^{a} != 1 in {field}")
    qinv = field.inv(q)
    exps = list(itertools.product(range(a), repeat=c))
    index = {e: i for i, e in enumerate(exps)}
    n = len(exps)
    mult = field.zeros((n, n, n))
    for i, e in enumerate(exps):
        for j, f in enumerate(exps):
            s = tuple(x + y for x, y in zip(e, f))
            if max(s) >= a:
                continue
            # move x_i^{f_i} left past x_j^{e_j} for every j > i
            swaps = sum(e[j] * f[i] for i in range(c) for j in range(i + 1, c))
            coeff = field(qinv ** swaps) if field.p == 0 else pow(int(qinv), swaps, field.p)
            mult[i, j, index[s]] = coeff
    names = ["x"] if c == 1 else [f"x{i + 1}" for i in range(c)]
    labels = [_monomial_label(e, names) for e in exps]
    radical = _index_rows(field, n, range(1, n))
    params = {"c": c, "a": a, "q": int(q) if field.p else str(q)}
    return BasisAlgebra(field, mult, tuple(labels), 0, radical, "quantum-ci", params)


def make_truncated_polynomial(c: int, a: int, field: FieldSpec, cap: int = CONSTRUCTOR_DIM_CAP) -> BasisAlgebra:
    """``k[x_1..x_c] / (x_1^a, ..., x_c^a)``."""
    alg = make_quantum_ci(c, a, 1, field, cap=cap)
    return BasisAlgebra(field, alg.mult, alg.labels, 0, alg.radical, "trunc-poly", {"c": c, "a": a})


def make_exterior(c: int, field: FieldSpec, cap: int = CONSTRUCTOR_DIM_CAP) -> BasisAlgebra:
    alg = make_quantum_ci(c, 2, -1, field, cap=cap)
    return BasisAlgebra(field, alg.mult, alg.labels, 0, alg.radical, "exterior", {"c": c})


# groups


def check_group(table) -> int:
    """Validate a multiplication table; return the index of the identity."""
    t = np.asarray(table)
    n = t.shape[0] if t.ndim == 2 else 0
    if t.ndim != 2 or t.shape != (n, n) or n == 0:
        raise NotAGroup("table must be a nonempty square")
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entries out of range")
    ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    for g in range(n):
        if e not in t[g]:
            raise NotAGroup(f"element {g} has no inverse")
    # (gh)k == g(hk) for all triples
    lhs = t[t]            # lhs[g, h, k] = (g h) k
    rhs = t[:, t]         # rhs[g, h, k] = g (h k)
    if not np.array_equal(lhs, rhs):
        raise NotAGroup("multiplication is not associative")
    return e


def make_group_algebra(mult_table, field: FieldSpec, labels=None, name: str = "group") -> BasisAlgebra:
    """Group algebra ``kG`` on the basis of group elements.

    The characteristic must divide ``|G|``; semisimple group algebras are
    rejected.
    """
    table = np.asarray(mult_table, dtype=np.int64)
    e = check_group(table)
    n = table.shape[0]
    if field.p == 0 or n % field.p:
        raise SemisimpleCase(f"char {field.p} does not divide |G| = {n}")
    mult = field.zeros((n, n, n))
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    mult[g, h, table] = field(1)
    p = field.p
    order = n
    while order % p == 0:
        order //= p
    if order == 1:
        # p-group: the radical is the augmentation ideal
        radical = field.zeros((n - 1, n))
        others = [x for x in range(n) if x != e]
        for r, x in enumerate(others):
            radical[r, x] = field(1)
            radical[r, e] = field(-1)
        radical = row_basis(radical, field)
    else:
        radical = compute_radical(mult, field)
    labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(n))
    aug = field.array([1] * n)
    return BasisAlgebra(field, mult, labels, e, radical, name, {"order": n}, aug)


def make_algebra(structure_constants, unit_index: int, field: FieldSpec, labels=None,
                 name: str = "algebra", check: bool = True) -> BasisAlgebra:
    """Algebra from raw structure constants; the radical is computed."""
    mult = field.array(structure_constants)
    n = mult.shape[0]
    if mult.shape != (n, n, n):
        raise NotAnAlgebra("structure constants must have shape (dim, dim, dim)")
    radical = compute_radical(mult, field)
    labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
    alg = BasisAlgebra(field, mult, labels, unit_index, radical, name, {})
    if check:
        alg.check()
    return alg


def _table_from_elements(elements, compose):
    index = {x: i for i, x in enumerate(elements)}
    return [[index[compose(x, y)] for y in elements] for x in elements]


def cyclic_group(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def elementary_abelian_group(p: int, r: int):
    elems = list(itertools.product(range(p), repeat=r))
    return _table_from_elements(elems, lambda x, y: tuple((a + b) % p for a, b in zip(x, y)))


def klein_four_group():
    return elementary_abelian_group(2, 2)


def symmetric_group(n: int):
    """Permutations of ``range(n)`` in lexicographic order (identity first)."""
    elems = list(itertools.permutations(range(n)))
    return _table_from_elements(elems, lambda x, y: tuple(x[y[i]] for i in range(n)))


def dihedral_group(n: int):
    """Symmetries of the regular ``n``-gon (order ``2n``), as pairs ``(rotation, reflection)``."""
    elems = [(r, s) for s in (0, 1) for r in range(n)]

    def compose(x, y):
        r1, s1 = x
        r2, s2 = y
        return ((r1 + (-r2 if s1 else r2)) % n, s1 ^ s2)

    return _table_from_elements(elems, compose)


def quaternion_group():
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis)
    mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }
    for a in range(4):
        mul[(a, 0)] = (1, a)
    elems = [(s, a) for s in (1, -1) for a in range(4)]

    def compose(x, y):
        sgn, axis = mul[(x[1], y[1])]
        return (x[0] * y[0] * sgn, axis)

    return _table_from_elements(elems, compose)

