"""Ext dimension sequences over finite-dimensional algebras and their eventual vanishing."""

from .errors import ExtVanishError
from .exactmath import GF, QQ, FieldSpec, Poly, SeriesWindow
from .hilbert import (
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
from .vanishing import (
    AnalysisResult,
    GradedWindow,
    RegularElementWitness,
    VerificationResult,
    WindowOperator,
    analyze,
    analyze_full,
    even_generator_degrees,
    find_regular_element,
    verify_verdict,
)

__version__ = "0.1.0"
