"""Vanishing analysis of Ext dimension sequences.

Two independent routes lead to the same kind of verdict.  The first fits a
rational generating function to the dimensions and reads off per-residue
polynomials (:mod:`extvanish.hilbert`).  The second looks for a homogeneous
combination of operators whose multiplication maps are injective on a
window; injectivity carries a nonzero piece forward in steps of its degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptyDegrees, InsufficientData, RegularElementNotFound
from .exactmath import FieldSpec, SeriesWindow, rank
from .hilbert import (
    DEFAULT_GUARD,
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
from .window import GradedWindow, WindowOperator  # noqa: F401  (re-exported)

DEFAULT_SEED = 20240229
DEFAULT_TRIALS = 64
EXHAUSTIVE_LIMIT = 128
# random coefficients over Q are drawn from [-RATIONAL_RANGE, RATIONAL_RANGE]
RATIONAL_RANGE = 16


def even_generator_degrees(degrees: Sequence[int], characteristic: int) -> list[int]:
    """Degrees of generators of the even (commutative) part of a graded-commutative ring.

    In characteristic 2 the ring is commutative and the degrees are kept.
    Otherwise: even degrees, pairwise sums of odd degrees, and doubled odd
    degrees.  The doubled degrees are a superset (odd squares may vanish).
    """
    degrees = [int(d) for d in degrees]
    if not degrees:
        raise EmptyDegrees("need at least one generator degree")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    if characteristic == 2:
        return list(degrees)
    odd = [d for d in degrees if d % 2]
    out = [d for d in degrees if d % 2 == 0]
    out += [a + b for a, b in itertools.combinations(odd, 2)]
    out += [2 * d for d in odd]
    return sorted(out)


@dataclass(frozen=True)
class RegularElementWitness:
    """``x = sum coefficients[w] * monomials[w]``, injective from piece ``n`` to ``n + degree``.

    ``certified_range = (a, b)`` means injectivity was checked for every
    source degree ``a <= n <= b``.  A monomial is a tuple of operator
    indices (with repetition).
    """

    degree: int
    monomials: tuple[tuple[int, ...], ...]
    coefficients: tuple[int, ...]
    certified_range: tuple[int, int]
    candidates_tried: int = 0

    def to_dict(self) -> dict:
        return {"degree": self.degree, "monomials": [list(m) for m in self.monomials],
                "coefficients": [str(c) for c in self.coefficients],
                "certified_range": list(self.certified_range), "candidates_tried": self.candidates_tried}

    @classmethod
    def from_dict(cls, data) -> "RegularElementWitness":
        coeffs = tuple(Fraction(c) if "/" in str(c) else int(c) for c in data["coefficients"])
        return cls(data["degree"], tuple(tuple(m) for m in data["monomials"]), coeffs,
                   tuple(data["certified_range"]), data.get("candidates_tried", 0))


def operator_monomials(degrees: Sequence[int], d: int) -> list[tuple[int, ...]]:
    """Multisets of operator indices whose degrees sum to ``d``, in a fixed order."""
    out = []
    k = len(degrees)
    max_len = d // min(degrees)
    for length in range(1, max_len + 1):
        for combo in itertools.combinations_with_replacement(range(k), length):
            if sum(degrees[i] for i in combo) == d:
                out.append(combo)
    return out


def monomial_matrix(window: GradedWindow, monomial: tuple[int, ...], n: int) -> np.ndarray:
    """Matrix of the product of the operators in ``monomial`` on piece ``n``.

    The last listed operator acts first.
    """
    f = window.field
    M = f.eye(window.dim(n))
    at = n
    for i in reversed(monomial):
        op = window.operators[i]
        M = f.matmul(op.matrices[at], M)
        at += op.degree
    return M


def _candidates(field: FieldSpec, m: int, trials: int, seed: int):
    """Nonzero coefficient vectors: all of them if few enough, else seeded random draws."""
    if field.is_finite and field.p ** m - 1 <= EXHAUSTIVE_LIMIT:
        for vec in itertools.product(range(field.p), repeat=m):
            if any(vec):
                yield vec
        return
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        if field.is_finite:
            vec = tuple(int(x) for x in rng.integers(0, field.p, size=m))
        else:
            vec = tuple(int(x) for x in rng.integers(-RATIONAL_RANGE, RATIONAL_RANGE + 1, size=m))
        if any(vec):
            yield vec


def find_regular_element(window: GradedWindow, d: int | None = None, trials: int = DEFAULT_TRIALS,
                         seed: int = DEFAULT_SEED) -> RegularElementWitness:
    """Search for a degree-``d`` element injective on every piece ``n0 + d .. n1 - d``."""
    ops = window.operators
    if not ops:
        raise ValueError("no operators in the window")
    degrees = [op.degree for op in ops]
    if d is None:
        d = lcm_degrees(degrees)
    lo, hi = window.n0 + d, window.n1 - d
    if hi < lo:
        raise InsufficientData(f"window [{window.n0}, {window.n1}] too short for degree {d}")
    monomials = operator_monomials(degrees, d)
    if not monomials:
        raise RegularElementNotFound(f"no monomial in the operators has degree {d}")
    f = window.field
    mats = {n: [monomial_matrix(window, w, n) for w in monomials] for n in range(lo, hi + 1)}
    tried = 0
    for vec in _candidates(f, len(monomials), trials, seed):
        tried += 1
        coeffs = [f(c) for c in vec]
        ok = True
        for n in range(lo, hi + 1):
            if window.dim(n) == 0:
                continue
            X = f.zeros((window.dim(n + d), window.dim(n)))
            for c, M in zip(coeffs, mats[n]):
                if c:
                    X = f.reduce(X + c * M)
            if rank(X, f) < window.dim(n):
                ok = False
                break
        if ok:
            return RegularElementWitness(d, tuple(monomials), tuple(vec), (lo, hi), tried)
    where = "all candidates" if f.is_finite and f.p ** len(monomials) - 1 <= EXHAUSTIVE_LIMIT else f"{trials} trials"
    raise RegularElementNotFound(
        f"no injective degree-{d} element among {where} over {f}; the window may start before the "
        "Noetherian tail, the module may not be eventually torsion-free, or the field may be too small")


@dataclass
class AnalysisResult:
    """Everything computed by :func:`analyze_full`."""

    report: VanishingReport
    degrees: list[int]
    period: int
    window: SeriesWindow
    gf: RationalGF | None = None
    reduced: ReducedGF | None = None
    quasi_polynomial: QuasiPolynomial | None = None
    witness: RegularElementWitness | None = None
    notes: list[str] = dc_field(default_factory=list)


def _window_of(seq) -> SeriesWindow:
    if isinstance(seq, SeriesWindow):
        return seq
    dims = getattr(seq, "dims", None)
    if isinstance(dims, SeriesWindow):
        return dims
    return SeriesWindow(0, seq)


def analyze_full(seq, degrees: Sequence[int], characteristic: int = 2, *, guard: int = DEFAULT_GUARD,
                 even_part: bool = True, graded_window: GradedWindow | None = None,
                 trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> AnalysisResult:
    """Classify the eventual vanishing of a dimension sequence.

    ``degrees`` are generator degrees of the acting ring.  With
    ``even_part`` they are first replaced by degrees of generators of the
    even subring (see :func:`even_generator_degrees`); pass ``False`` when
    the operators are already of even degree and commute.
    """
    window = _window_of(seq)
    eff = even_generator_degrees(degrees, characteristic) if even_part else [int(x) for x in degrees]
    d = lcm_degrees(eff)
    notes = []
    if even_part and characteristic != 2 and any(x % 2 for x in degrees):
        notes.append("odd generator degrees replaced by even-part degrees (sums and doubles); "
                     "doubled degrees may inflate the period")
    if not any(window.terms):
        report = VanishingReport(Verdict.EVENTUALLY_ZERO, d, (), window.start, "quasi-polynomial", 1,
                                 notes + ["window is identically zero"])
        return AnalysisResult(report, eff, d, window, notes=report.notes)
    gf = fit_numerator(window, eff, guard)
    red = reduce_gf(gf)
    qp = quasi_polynomial(red, d, window)
    report = classify(qp)
    notes.append("m0 exceeds every nonnegative integer root of the nonzero residue polynomials")
    witness = None
    provenance = report.provenance
    if graded_window is not None and graded_window.operators:
        try:
            witness = find_regular_element(graded_window, trials=trials, seed=seed)
        except (RegularElementNotFound, InsufficientData) as exc:
            notes.append(f"regular element search: {exc}")
        else:
            a, b = witness.certified_range
            notes.append(f"degree-{witness.degree} element injective on source degrees [{a}, {b}] "
                         "(window certificate only)")
            if report.verdict is Verdict.PERIODIC_NONVANISHING and _confirms(report, witness, graded_window):
                provenance = "both"
    report = VanishingReport(report.verdict, report.period, report.nonvanishing_residues, report.m0,
                             provenance, report.minimal_period, tuple(notes))
    return AnalysisResult(report, eff, d, window, gf, red, qp, witness, notes)


def _confirms(report: VanishingReport, witness: RegularElementWitness, gw: GradedWindow) -> bool:
    """Injectivity from a nonzero piece ``n*`` keeps ``n* + k * deg`` nonzero; needs ``deg | period``."""
    if report.period % witness.degree:
        return False
    a, b = witness.certified_range
    for j in report.nonvanishing_residues:
        if not any(n % report.period == j and gw.dim(n) > 0 for n in range(a, b + 1)):
            return False
    return True


def analyze(seq, degrees: Sequence[int], characteristic: int = 2, **options) -> VanishingReport:
    return analyze_full(seq, degrees, characteristic, **options).report


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    position: int | None = None
    expected_nonzero: bool | None = None
    actual: int | None = None
    checked: int = 0

    def to_dict(self) -> dict:
        return {"passed": self.passed, "position": self.position, "expected_nonzero": self.expected_nonzero,
                "actual": self.actual, "checked": self.checked}

    @classmethod
    def from_dict(cls, data) -> "VerificationResult":
        return cls(data["passed"], data.get("position"), data.get("expected_nonzero"), data.get("actual"),
                   data.get("checked", 0))

    def __bool__(self):
        return self.passed


def verify_verdict(report: VanishingReport, holdout: SeriesWindow) -> VerificationResult:
    """Check the zero pattern of ``holdout`` at degrees ``n >= m0`` against ``report``."""
    checked = 0
    for n in holdout.degrees():
        if n < report.m0:
            continue
        checked += 1
        expect = report.expected_nonzero(n)
        if (holdout[n] != 0) != expect:
            return VerificationResult(False, n, expect, holdout[n], checked)
    return VerificationResult(True, None, None, None, checked)

