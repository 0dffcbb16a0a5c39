"""Exact arithmetic: prime fields, rationals, dense matrices, polynomials, power series."""

from .field import GF, QQ, FieldSpec, is_prime
from .linalg import DenseMatrix, complement_rows, inverse, kernel, rank, rank_kernel, rref, row_basis, solve
from .poly import Poly, integer_roots, poly_divmod, poly_gcd
from .series import SeriesWindow, denominator_poly, expand_coefficients, series_div, series_expand

__all__ = [
    "GF", "QQ", "FieldSpec", "is_prime",
    "DenseMatrix", "complement_rows", "inverse", "kernel", "rank", "rank_kernel", "rref", "row_basis", "solve",
    "Poly", "integer_roots", "poly_divmod", "poly_gcd",
    "SeriesWindow", "denominator_poly", "expand_coefficients", "series_div", "series_expand",
]
