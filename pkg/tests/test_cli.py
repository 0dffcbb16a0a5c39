import json
import subprocess
import sys

import pytest

from extvanish.cli import main
from extvanish.config import CONFIG_SCHEMA, ConfigError, parse_config
from extvanish.report import ReportDocument, pattern_sentence
from extvanish.hilbert import VanishingReport, Verdict


def _write(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps({"schema": CONFIG_SCHEMA, **cfg}))
    return str(path)


TRUNC = {"algebra": {"preset": "trunc-poly", "c": 1, "a": 3, "p": 3}, "n_max": 30,
         "acting_ring": {"kind": "degree-two-operators"}}
V4 = {"algebra": {"preset": "group", "group": "klein-four", "p": 2}, "n_max": 24,
      "acting_ring": {"kind": "ext-generators", "max_degree": 4}}


def test_ext_csv(tmp_path, capsys):
    cfg = _write(tmp_path, "v4.json", {**V4, "n_max": 5})
    assert main(["ext", "--config", cfg]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,dim"
    assert lines[1:] == [f"{n},{n + 1}" for n in range(6)]


def test_resolve_csv(tmp_path):
    cfg = _write(tmp_path, "ext.json", {"algebra": {"preset": "exterior", "c": 2, "p": 2}, "n_max": 4})
    out = tmp_path / "betti.csv"
    assert main(["resolve", "--config", cfg, "--out", str(out)]) == 0
    assert out.read_text() == "n,betti\n0,1\n1,2\n2,3\n3,4\n4,5\n"


def test_analyze_hypersurface(tmp_path, capsys):
    cfg = _write(tmp_path, "tp.json", TRUNC)
    assert main(["analyze", "--config", cfg]) == 0
    cap = capsys.readouterr()
    doc = ReportDocument.from_json(cap.out)
    assert doc.report.period == 2 and doc.report.nonvanishing_residues == (0, 1)
    assert doc.report.provenance == "both"
    assert doc.verification.passed
    assert "verdict: PeriodicNonvanishing" in cap.err


def test_analyze_reports_are_byte_identical(tmp_path):
    cfg = _write(tmp_path, "v4.json", V4)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["analyze", "--config", cfg, "--out", str(a), "--seed", "5"]) == 0
    assert main(["analyze", "--config", cfg, "--out", str(b), "--seed", "5"]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = ReportDocument.from_json(a.read_text())
    assert doc.to_json() == a.read_text()
    assert doc.reverify().passed
    assert doc.input["effective"]["seed"] == 5
    assert doc.witness["degree"] == 1


def test_analyze_projective_module(tmp_path, capsys):
    cfg = _write(tmp_path, "reg.json", {"algebra": {"preset": "exterior", "c": 2, "p": 2}, "M": "regular",
                                        "n_max": 20})
    assert main(["analyze", "--config", cfg]) == 0
    doc = ReportDocument.from_json(capsys.readouterr().out)
    assert doc.report.verdict is Verdict.EVENTUALLY_ZERO
    assert doc.report.m0 <= 1


def test_analyze_timing_is_opt_in(tmp_path, capsys):
    cfg = _write(tmp_path, "tp.json", TRUNC)
    main(["analyze", "--config", cfg])
    assert "timing" not in json.loads(capsys.readouterr().out)
    main(["analyze", "--config", cfg, "--timing"])
    assert "total_s" in json.loads(capsys.readouterr().out)["timing"]


def test_fibonacci_exits_2(tmp_path, capsys):
    fib = [1, 1]
    while len(fib) < 40:
        fib.append(fib[-1] + fib[-2])
    cfg = _write(tmp_path, "fib.json", {"sequence": [0, 3] + fib, "degrees": [1, 2, 3]})
    assert main(["analyze", "--config", cfg]) == 2
    assert "no rational fit" in capsys.readouterr().err


def test_config_errors_exit_1(tmp_path, capsys):
    cfg = _write(tmp_path, "bad.json", {"algebra": {"preset": "trunc-poly", "c": 1, "p": 2}})
    assert main(["analyze", "--config", cfg]) == 1
    assert "algebra.a" in capsys.readouterr().err
    assert main(["analyze", "--config", str(tmp_path / "missing.json")]) == 1
    (tmp_path / "broken.json").write_text("{")
    assert main(["ext", "--config", str(tmp_path / "broken.json")]) == 1
    assert main(["analyze", "--config", _write(tmp_path, "g.json", TRUNC), "--guard", "2"]) == 1
    assert main(["frobnicate"]) == 1


def test_resource_cap_exits_3(tmp_path, capsys):
    cfg = _write(tmp_path, "big.json", {"algebra": {"preset": "trunc-poly", "c": 13, "a": 2, "p": 2}, "n_max": 3})
    assert main(["ext", "--config", cfg]) == 3
    assert "resource cap" in capsys.readouterr().err


def test_lcm_command(capsys):
    assert main(["lcm", "1", "2", "3"]) == 0
    assert capsys.readouterr().out == "6\n"
    assert main(["lcm", "1", "2", "3", "4", "5", "6", "7"]) == 0
    assert capsys.readouterr().out == "420\n"
    assert main(["lcm"]) == 1
    assert main(["lcm", "0"]) == 1


def test_batch_analyze(tmp_path, capsys):
    d = tmp_path / "cfgs"
    d.mkdir()
    _write(d, "a.json", TRUNC)
    _write(d, "b.json", {"sequence": [1] * 30, "degrees": [2]})
    out = tmp_path / "reports"
    assert main(["analyze", "--config", str(d), "--out", str(out), "--jobs", "2"]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["a.report.json", "b.report.json"]
    assert "== " in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "extvanish.cli", "lcm", "4", "6"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "12\n"


def test_parse_config_validation():
    with pytest.raises(ConfigError, match="schema"):
        parse_config({"algebra": {}})
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config({"schema": CONFIG_SCHEMA, "sequence": [1], "degrees": [1], "extra": 1})
    with pytest.raises(ConfigError, match="algebra.p"):
        parse_config({"schema": CONFIG_SCHEMA, "algebra": {"preset": "exterior", "c": 2, "p": 4}})
    with pytest.raises(ConfigError, match="algebra.group"):
        parse_config({"schema": CONFIG_SCHEMA, "algebra": {"preset": "group", "group": "monster", "p": 2}})
    with pytest.raises(ConfigError, match="'M'"):
        parse_config({"schema": CONFIG_SCHEMA, "algebra": {"preset": "exterior", "c": 2, "p": 2}, "M": "injective"})
    cfg = parse_config({"schema": CONFIG_SCHEMA, "algebra": {"preset": "exterior", "c": 2, "p": 2},
                        "M": {"syzygy": 2}})
    assert cfg.n_max == 40 and cfg.acting["kind"] == "ext-generators"


def test_group_table_config(tmp_path, capsys):
    (tmp_path / "c2.csv").write_text("e,g\n0,1\n1,0\n")
    cfg = _write(tmp_path, "c2.json", {"algebra": {"group_table": "c2.csv", "p": 2}, "n_max": 4})
    assert main(["ext", "--config", cfg]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == [f"{n},1" for n in range(5)]


def test_structure_constants_config(tmp_path, capsys):
    # k[x]/(x^2) with basis 1, x
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    (tmp_path / "alg.json").write_text(json.dumps({"mult": mult}))
    cfg = _write(tmp_path, "sc.json", {"algebra": {"structure_constants": "alg.json", "p": 3}, "n_max": 3})
    assert main(["resolve", "--config", cfg]) == 0
    assert capsys.readouterr().out == "n,betti\n0,1\n1,1\n2,1\n3,1\n"


def test_pattern_sentences():
    zero = VanishingReport(Verdict.EVENTUALLY_ZERO, 2, (), 1)
    assert pattern_sentence(zero) == "Ext^n(M, N) = 0 for all n >= 1."
    even = VanishingReport(Verdict.PERIODIC_NONVANISHING, 2, (0,), 4)
    assert "all even" in pattern_sentence(even)
    both = VanishingReport(Verdict.PERIODIC_NONVANISHING, 2, (0, 1), 0)
    assert "both parity classes" in pattern_sentence(both)
    twelve = VanishingReport(Verdict.PERIODIC_NONVANISHING, 12, (0, 3, 4), 1)
    assert "n mod 12 in {0, 3, 4}" in pattern_sentence(twelve)
