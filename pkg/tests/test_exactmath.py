from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from extvanish.exactmath import (
    GF,
    QQ,
    DenseMatrix,
    FieldSpec,
    Poly,
    SeriesWindow,
    complement_rows,
    denominator_poly,
    integer_roots,
    inverse,
    kernel,
    poly_divmod,
    poly_gcd,
    rank,
    rank_kernel,
    row_basis,
    series_div,
    series_expand,
    solve,
)

FIELDS = [GF(2), GF(3), GF(5), GF(7), QQ, GF(2_147_483_647)]


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(4)
    assert GF(2).dtype is np.int64
    assert QQ.dtype is object
    # large primes switch to Python integers
    assert GF(2_147_483_647).dtype is object


def test_field_inverse_and_reduce():
    f = GF(7)
    for x in range(1, 7):
        assert (x * f.inv(x)) % 7 == 1
    assert QQ.inv(Fraction(3, 4)) == Fraction(4, 3)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_rank_examples():
    f = GF(2)
    # over F_2 the rows of this matrix are dependent: r3 = r1 + r2
    m = f.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank(m, f) == 2
    assert rank(QQ.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), QQ) == 3
    assert rank(f.zeros((0, 4)), f) == 0


def test_dense_matrix_rank_kernel():
    m = DenseMatrix.from_rows(GF(3), [[1, 2, 0], [2, 1, 0]])
    r, ker = rank_kernel(m)
    assert r == 1
    assert len(ker) == 2
    for v in ker:
        assert not np.any(GF(3).matmul(m.data, GF(3).array(v)))
    assert m.T.T == m


def test_solve_inverse_complement():
    f = GF(5)
    a = f.array([[1, 2], [3, 4]])
    ai = inverse(a, f)
    assert np.array_equal(f.matmul(a, ai), f.eye(2))
    b = f.array([1, 1])
    x = solve(a, b, f)
    assert np.array_equal(f.matmul(a, x), b)
    sub = f.array([[1, 0, 0]])
    comp = complement_rows(sub, f.eye(3), f)
    assert comp.shape == (2, 3)
    assert rank(np.concatenate([sub, comp]), f) == 3


def test_solve_inconsistent_raises():
    f = GF(2)
    with pytest.raises(Exception):
        solve(f.array([[1, 0], [1, 0]]), f.array([0, 1]), f)


@st.composite
def matrices(draw, max_side=6):
    f = draw(st.sampled_from(FIELDS))
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    lo, hi = (0, f.p - 1) if f.is_finite else (-4, 4)
    data = draw(st.lists(st.integers(lo, hi), min_size=r * c, max_size=r * c))
    return f, f.array(np.array(data, dtype=object).reshape(r, c))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_equals_transpose_rank(fm):
    f, m = fm
    assert rank(m, f) == rank(m.T.copy(), f)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(fm):
    f, m = fm
    K = kernel(m, f)
    assert rank(m, f) + K.shape[1] == m.shape[1]
    assert not np.any(f.matmul(m, K))
    assert rank(K, f) == K.shape[1]


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_row_basis_spans_rows(fm):
    f, m = fm
    R = row_basis(m, f)
    assert R.shape[0] == rank(m, f)
    assert rank(np.concatenate([R, m]), f) == R.shape[0]


def test_poly_arithmetic():
    p = Poly([1, 1])
    assert p * p == Poly([1, 2, 1])
    assert (p ** 3).degree == 3
    q, r = poly_divmod(Poly([1, 2, 1]), Poly([1, 1]))
    assert q == Poly([1, 1]) and r.is_zero()
    assert poly_gcd(Poly([1, 2, 1]), Poly([1, 0, -1])) == Poly([1, 1])
    assert Poly([0, 0]).is_zero()
    assert Poly.one_minus_z_power(3) == Poly([1, 0, 0, -1])


def test_poly_shift_and_roots():
    p = Poly([-5, 1])  # n - 5
    assert p.shift(2)(3) == 0
    assert integer_roots(Poly([6, -5, 1])) == [2, 3]
    assert integer_roots(Poly([0, 0, 1])) == [0]
    assert integer_roots(Poly([1, 0, 1])) == []
    with pytest.raises(ValueError):
        integer_roots(Poly())


polys = st.lists(st.integers(-9, 9), min_size=0, max_size=7).map(Poly)


@settings(max_examples=200, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divmod_round_trip(a, b):
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@settings(max_examples=100, deadline=None)
@given(polys.filter(lambda p: not p.is_zero()), polys.filter(lambda p: not p.is_zero()))
def test_gcd_divides(a, b):
    g = poly_gcd(a, b)
    assert poly_divmod(a, g)[1].is_zero()
    assert poly_divmod(b, g)[1].is_zero()


def test_series_window_absolute_indexing():
    w = SeriesWindow(3, [1, 2, 3, 4])
    assert w[3] == 1 and w[6] == 4 and w.stop == 7
    assert w.slice(4, 6).terms == (2, 3)
    assert SeriesWindow.from_json(w.to_json()) == w
    with pytest.raises(IndexError):
        w[2]
    with pytest.raises(ValueError):
        SeriesWindow(0, [1, -1])


def test_series_expand_and_div():
    # 1 / (1 - z)^2 has coefficients n + 1
    assert series_expand(Poly([1]), [1, 1], 6).terms == (1, 2, 3, 4, 5, 6)
    assert denominator_poly([1, 2]) == Poly([1, -1, -1, 1])
    assert series_div(Poly([1]), Poly([1, -1, -1]), 7) == [1, 1, 2, 3, 5, 8, 13]
