"""One test per acceptance criterion; a summary line per criterion is printed at the end of the run."""

import itertools
import json
import time

import numpy as np
import pytest

from corpus import CORPUS, corpus_algebra
from test_properties import random_invertible
from extvanish.algebra import (
    cyclic_group,
    dihedral_group,
    eisenbud_operator,
    elementary_abelian_group,
    ext_dims,
    ext_ring_generators,
    klein_four_group,
    make_exterior,
    make_group_algebra,
    make_quantum_ci,
    make_truncated_polynomial,
    minimal_resolution,
    operator_window,
    quaternion_group,
    regular_module,
    standard_module,
    symmetric_group,
    trivial_module,
)
from extvanish.algebra.modules import parse_module_kind
from extvanish.cli import main
from extvanish.config import CONFIG_SCHEMA
from extvanish.errors import NotRational
from extvanish.exactmath import GF, Poly, SeriesWindow
from extvanish.hilbert import RationalGF, Verdict, classify, fit_numerator, lcm_degrees, quasi_polynomial, reduce_gf
from extvanish.vanishing import analyze_full, find_regular_element, verify_verdict


@pytest.mark.criterion(1, "hypersurface k[x]/(x^a): Ext dims 1, d = 2, residues {0,1}, holdout 30-40")
@pytest.mark.parametrize("a", [2, 3, 4])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_hypersurface(a, p):
    t0 = time.perf_counter()
    alg = make_truncated_polynomial(1, a, GF(p))
    k = trivial_module(alg)
    res = minimal_resolution(alg, k, 41)
    dims = ext_dims(alg, k, k, 40, resolution=res).dims
    assert dims.terms == (1,) * 41
    window = operator_window(alg, k, k, [eisenbud_operator(res)], 0, 29, resolution=res)
    out = analyze_full(dims.slice(0, 30), [2], p, even_part=False, graded_window=window)
    rep = out.report
    assert rep.verdict is Verdict.PERIODIC_NONVANISHING
    assert rep.period == 2 and rep.nonvanishing_residues == (0, 1)
    assert rep.provenance == "both"
    check = verify_verdict(rep, dims.slice(30))
    assert check.passed and check.checked == 11
    assert time.perf_counter() - t0 < 1.0


PRESETS = [
    ("trunc-poly(1,3) F3", lambda: make_truncated_polynomial(1, 3, GF(3))),
    ("trunc-poly(2,2) F2", lambda: make_truncated_polynomial(2, 2, GF(2))),
    ("quantum-ci(2,3,2) F7", lambda: make_quantum_ci(2, 3, 2, GF(7))),
    ("quantum-ci(2,2,-1) F5", lambda: make_quantum_ci(2, 2, -1, GF(5))),
    ("exterior(3) F3", lambda: make_exterior(3, GF(3))),
    ("cyclic(4) F2", lambda: make_group_algebra(cyclic_group(4), GF(2))),
    ("klein-four F2", lambda: make_group_algebra(klein_four_group(), GF(2))),
    ("dihedral(4) F2", lambda: make_group_algebra(dihedral_group(4), GF(2))),
    ("symmetric(3) F3", lambda: make_group_algebra(symmetric_group(3), GF(3))),
    ("elementary-abelian(3,2) F3", lambda: make_group_algebra(elementary_abelian_group(3, 2), GF(3))),
    ("quaternion F2", lambda: make_group_algebra(quaternion_group(), GF(2))),
]


@pytest.mark.criterion(2, "regular module over every preset: Ext^n = 0 for n >= 1, EventuallyZero, m0 <= 1")
@pytest.mark.parametrize("name,make", PRESETS, ids=[p[0] for p in PRESETS])
def test_projective_vanishing(name, make):
    t0 = time.perf_counter()
    alg = make()
    dims = ext_dims(alg, regular_module(alg), trivial_module(alg), 20).dims
    assert all(dims[n] == 0 for n in range(1, 21))
    rep = analyze_full(dims, [2], alg.characteristic, even_part=False).report
    assert rep.verdict is Verdict.EVENTUALLY_ZERO and rep.m0 <= 1
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.criterion(3, "exterior(2, F2) and quantum_ci(2, 2, -1, F5): dims n+1, numerator (1+z)^2, d = 2")
@pytest.mark.parametrize("make", [lambda: make_exterior(2, GF(2)), lambda: make_quantum_ci(2, 2, -1, GF(5))],
                         ids=["exterior(2) F2", "qci(2,2,-1) F5"])
def test_exterior_quantum_ci(make):
    t0 = time.perf_counter()
    alg = make()
    k = trivial_module(alg)
    dims = ext_dims(alg, k, k, 30).dims
    assert dims.terms == tuple(n + 1 for n in range(31))
    gf = fit_numerator(dims, [2, 2])
    assert gf.numerator == Poly([1, 2, 1])
    qp = quasi_polynomial(reduce_gf(gf), 2, dims)
    assert qp.components == (Poly([1, 1]), Poly([1, 1]))
    rep = classify(qp)
    assert rep.period == 2 and rep.nonvanishing_residues == (0, 1)
    assert time.perf_counter() - t0 < 10.0


@pytest.mark.criterion(4, "Klein four over F2: dims n+1, generators [1,1], d = 1, witness on [1, 23]")
def test_klein_four():
    t0 = time.perf_counter()
    alg = make_group_algebra(klein_four_group(), GF(2))
    k = trivial_module(alg)
    res = minimal_resolution(alg, k, 26)
    dims = ext_dims(alg, k, k, 25, resolution=res).dims
    assert dims.terms == tuple(n + 1 for n in range(26))
    gens = ext_ring_generators(alg, 6, resolution=res)
    assert gens.degrees == [1, 1]
    rep = analyze_full(dims, gens.degrees, 2).report
    assert rep.verdict is Verdict.PERIODIC_NONVANISHING
    assert rep.period == 1 and rep.nonvanishing_residues == (0,)
    window = operator_window(alg, k, k, gens.lifts, 0, 24, resolution=res)
    witness = find_regular_element(window, 1)
    assert witness.certified_range == (1, 23)
    assert time.perf_counter() - t0 < 30.0


@pytest.mark.criterion(5, "lcm command: 6 for {1,2,3} and 420 for {1,...,7}")
def test_lcm_values(capsys):
    assert main(["lcm", "1", "2", "3"]) == 0
    assert capsys.readouterr().out.strip() == "6"
    assert main(["lcm"] + [str(i) for i in range(1, 8)]) == 0
    assert capsys.readouterr().out.strip() == "420"


def _random_gfs(count, seed=2024):
    """Random numerators and denominators with nonnegative expansions over 60 terms."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        num = [int(c) for c in rng.integers(-3, 4, size=int(rng.integers(1, 10)))]
        if not any(num):
            continue
        degrees = tuple(int(d) for d in rng.integers(1, 5, size=int(rng.integers(1, 4))))
        coeffs = RationalGF(Poly(num), degrees).expand(60)
        if all(c >= 0 for c in coeffs):
            out.append((Poly(num), degrees, [int(c) for c in coeffs]))
    return out


@pytest.mark.criterion(6, "200 random rational functions: fit on 40 terms predicts terms 41-60 exactly")
def test_round_trip_suite():
    t0 = time.perf_counter()
    cases = _random_gfs(200)
    assert len(cases) == 200
    for num, degrees, coeffs in cases:
        window = SeriesWindow(0, coeffs[:40])
        gf = fit_numerator(window, degrees)
        assert gf.same_function(RationalGF(num, degrees))
        qp = quasi_polynomial(reduce_gf(gf), lcm_degrees(degrees), window)
        rep = classify(qp)
        assert rep.m0 <= 40
        for n in range(40, 60):
            assert qp.value(n) == coeffs[n]
            assert (coeffs[n] != 0) == rep.expected_nonzero(n)
    assert time.perf_counter() - t0 < 30.0


def _eventually_fibonacci(n_terms=40):
    fib = [1, 1]
    while len(fib) < n_terms - 3:
        fib.append(fib[-1] + fib[-2])
    return [2, 0, 5] + fib


@pytest.mark.criterion(7, "eventually Fibonacci window: NotRational for every degree list, CLI exit 2")
def test_fibonacci_negative_control(tmp_path):
    window = SeriesWindow(0, _eventually_fibonacci())
    lists = [list(c) for r in range(1, 5) for c in itertools.combinations_with_replacement([1, 2, 3], r)]
    for degrees in lists:
        with pytest.raises(NotRational):
            fit_numerator(window, degrees)
    cfg = tmp_path / "fib.json"
    cfg.write_text(json.dumps({"schema": CONFIG_SCHEMA, "sequence": list(window.terms), "degrees": [1, 2, 3]}))
    assert main(["analyze", "--config", str(cfg)]) == 2


@pytest.mark.criterion(8, "corpus resolutions: d^2 = 0, exactness, minimality, Betti stable under basis change")
@pytest.mark.parametrize("entry", CORPUS, ids=[e[0] for e in CORPUS])
def test_resolution_invariants(entry):
    name, m_kind = entry[0], entry[2]
    alg = corpus_algebra(name)
    kinds = {parse_module_kind(kind) for kind in (m_kind, "trivial", "syzygy(1)")}
    for kind, i in sorted(kinds):
        m = standard_module(alg, {"syzygy": i} if kind == "syzygy" else kind)
        res = minimal_resolution(alg, m, 10)
        assert res.check_d_squared()
        assert res.check_exactness()
        if alg.is_local:
            assert res.check_minimality()
        for seed in range(5):
            mc = m.conjugate(random_invertible(alg.field, m.dim, seed))
            assert minimal_resolution(alg, mc, 10).betti == res.betti


@pytest.mark.criterion(9, "S4 over F2 to degree 12: dims fit over (1-z)(1-z^2)(1-z^3)")
def test_symmetric_four():
    t0 = time.perf_counter()
    alg = make_group_algebra(symmetric_group(4), GF(2))
    k = trivial_module(alg)
    res = minimal_resolution(alg, k, 13)
    assert res.check_d_squared() and res.check_exactness()
    dims = ext_dims(alg, k, k, 12, resolution=res).dims
    # 13 terms leave room for a guard of 7 trailing zero coefficients (sum of degrees is 6)
    gf = fit_numerator(dims, [1, 2, 3], guard=7)
    assert gf.numerator == Poly([1, 0, 0, 0, -1])
    # extend and check that the fitted function predicts further degrees
    more = ext_dims(alg, k, k, 20, resolution=res).dims
    assert list(more.terms) == [int(c) for c in gf.expand(21)]
    rep = analyze_full(more, [1, 2, 3], 2).report
    assert rep.period == 6 and rep.nonvanishing_residues == tuple(range(6))
    assert time.perf_counter() - t0 < 600
