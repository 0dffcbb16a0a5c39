from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from extvanish.errors import EmptyDegrees, FitContradiction, InsufficientData, NotRational
from extvanish.exactmath import Poly, SeriesWindow, series_expand
from extvanish.hilbert import (
    QuasiPolynomial,
    RationalGF,
    ReducedGF,
    VanishingReport,
    Verdict,
    classify,
    fit_numerator,
    lcm_degrees,
    quasi_polynomial,
    reduce_gf,
)


def test_lcm_examples():
    assert lcm_degrees([1, 2, 3]) == 6
    assert lcm_degrees(range(1, 8)) == 420
    assert lcm_degrees([2, 2]) == 2
    with pytest.raises(EmptyDegrees):
        lcm_degrees([])
    with pytest.raises(ValueError):
        lcm_degrees([0, 2])


def test_fit_examples():
    gf = fit_numerator(SeriesWindow(0, [1] * 20), [2])
    assert gf.numerator == Poly([1, 1])
    gf = fit_numerator(SeriesWindow(0, range(1, 22)), [2, 2])
    assert gf.numerator == Poly([1, 2, 1])
    with pytest.raises(NotRational):
        fit_numerator(SeriesWindow(0, [1, 0, 0] * 7), [2])


def test_fit_preconditions():
    with pytest.raises(InsufficientData):
        fit_numerator(SeriesWindow(0, [1] * 9), [2])
    with pytest.raises(ValueError):
        fit_numerator(SeriesWindow(0, [1] * 20), [2], guard=3)


def test_fit_reproduces_window():
    w = SeriesWindow(0, [1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0])
    gf = fit_numerator(w, [4, 6])
    assert tuple(gf.expand(len(w))) == w.terms


def test_reduce_examples():
    red = reduce_gf(RationalGF(Poly([1, 1]), (2,)))
    assert red.poly_part.is_zero() and red.numerator == Poly([1]) and red.denominator == Poly([1, -1])
    red = reduce_gf(RationalGF(Poly([1, 0, -1]), (2,)))
    assert red.poly_part == Poly([1]) and red.numerator.is_zero() and red.denominator == Poly([1])
    red = reduce_gf(RationalGF(Poly([1]), (1, 2)))
    assert red.poly_part.is_zero() and red.numerator == Poly([1])
    assert red.denominator == Poly([1, -1]) * Poly([1, 0, -1])


def _qp(numerator, degrees, d, n_terms=30, start=0):
    gf = RationalGF(Poly(numerator), tuple(degrees), start)
    window = SeriesWindow(start, gf.expand(n_terms))
    return quasi_polynomial(reduce_gf(gf), d, window)


def test_quasi_polynomial_examples():
    qp = _qp([1], [1], 2)
    assert qp.components == (Poly([1]), Poly([1]))
    assert qp.minimal_period() == 1
    qp = _qp([1], [2], 2)
    assert qp.components == (Poly([1]), Poly())
    qp = _qp([1], [1, 1], 2)
    assert qp.components == (Poly([1, 1]), Poly([1, 1]))


def test_quasi_polynomial_shifted_window():
    # window on degrees 5.. of 1/(1-z)^2 (values n + 1)
    w = SeriesWindow(5, [n + 1 for n in range(5, 40)])
    red = reduce_gf(fit_numerator(w, [1, 1]))
    qp = quasi_polynomial(red, 1, w)
    assert qp.value(100) == 101


def test_quasi_polynomial_rejects_bad_period():
    red = reduce_gf(RationalGF(Poly([1]), (2,)))
    with pytest.raises(ValueError):
        quasi_polynomial(red, 3, SeriesWindow(0, [1, 0] * 10))


def test_quasi_polynomial_detects_contradiction():
    red = reduce_gf(RationalGF(Poly([1]), (1,)))
    with pytest.raises(FitContradiction):
        quasi_polynomial(red, 1, SeriesWindow(0, [1] * 10 + [2]))


def test_classify_examples():
    qp = QuasiPolynomial(2, (Poly(), Poly()), 0)
    rep = classify(qp)
    assert rep.verdict is Verdict.EVENTUALLY_ZERO and rep.nonvanishing_residues == ()
    rep = classify(QuasiPolynomial(2, (Poly([1]), Poly()), 3))
    assert rep.verdict is Verdict.PERIODIC_NONVANISHING
    assert rep.nonvanishing_residues == (0,) and rep.m0 == 3
    rep = classify(QuasiPolynomial(1, (Poly([-5, 1]),), 0))
    assert rep.nonvanishing_residues == (0,) and rep.m0 == 6


def test_report_validation_and_json():
    with pytest.raises(ValueError):
        VanishingReport(Verdict.EVENTUALLY_ZERO, 2, (0,), 0)
    with pytest.raises(ValueError):
        VanishingReport(Verdict.PERIODIC_NONVANISHING, 2, (2,), 0)
    rep = VanishingReport(Verdict.PERIODIC_NONVANISHING, 4, (3, 0), 7, "both", 2, ("x",))
    assert rep.nonvanishing_residues == (0, 3)
    assert VanishingReport.from_dict(rep.to_dict()) == rep
    gf = RationalGF(Poly([1, 2, -1]), (1, 3), 2)
    assert RationalGF.from_dict(gf.to_dict()) == gf
    red = reduce_gf(gf)
    assert ReducedGF.from_dict(red.to_dict()) == red
    qp = QuasiPolynomial(2, (Poly([Fraction(1, 2), 1]), Poly()), 1)
    assert QuasiPolynomial.from_dict(qp.to_dict()) == qp


# property tests


@st.composite
def rational_series(draw, n_terms=60):
    num = draw(st.lists(st.integers(-3, 3), min_size=1, max_size=9))
    assume(any(num))
    degrees = draw(st.lists(st.integers(1, 4), min_size=1, max_size=3))
    coeffs = series_expand(Poly(num), degrees, n_terms) if _nonneg(num, degrees, n_terms) else None
    assume(coeffs is not None)
    return Poly(num), degrees, coeffs


def _nonneg(num, degrees, n):
    gf = RationalGF(Poly(num), tuple(degrees))
    return all(c >= 0 for c in gf.expand(n))


def _pipeline(window, degrees):
    gf = fit_numerator(window, degrees)
    qp = quasi_polynomial(reduce_gf(gf), lcm_degrees(degrees), window)
    return gf, qp, classify(qp)


@settings(max_examples=120, deadline=None)
@given(rational_series())
def test_round_trip_recovers_function(data):
    num, degrees, series = data
    gf, qp, rep = _pipeline(series, degrees)
    assert gf.same_function(RationalGF(num, tuple(degrees)))
    for n in series.degrees():
        if n >= rep.m0:
            assert (series[n] != 0) == rep.expected_nonzero(n)
        if n >= qp.valid_from:
            assert qp.value(n) == series[n]


@settings(max_examples=120, deadline=None)
@given(rational_series())
def test_holdout_prediction(data):
    _, degrees, series = data
    cut = 2 * len(series) // 3
    _, qp, rep = _pipeline(series.slice(0, cut), degrees)
    for n in range(cut, series.stop):
        assert qp.value(n) == series[n]
        assert (series[n] != 0) == rep.expected_nonzero(n)


@settings(max_examples=80, deadline=None)
@given(rational_series(), st.integers(2, 7))
def test_scaling_invariance(data, k):
    _, degrees, series = data
    rep = _pipeline(series, degrees)[2]
    rep_k = _pipeline(series.scaled(k), degrees)[2]
    assert (rep.verdict, rep.period, rep.nonvanishing_residues, rep.m0) == \
        (rep_k.verdict, rep_k.period, rep_k.nonvanishing_residues, rep_k.m0)


@settings(max_examples=80, deadline=None)
@given(rational_series(), st.integers(1, 5))
def test_prefix_discard_stability(data, s):
    _, degrees, series = data
    rep = _pipeline(series, degrees)[2]
    rep_s = _pipeline(series.slice(s), degrees)[2]
    assert rep.verdict == rep_s.verdict
    assert rep.nonvanishing_residues == rep_s.nonvanishing_residues
    assert rep.period == rep_s.period
