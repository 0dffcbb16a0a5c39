"""Run configurations for the command line tool.

A configuration is a JSON object with a ``schema`` field.  Either it names
an algebra and two modules (dimensions are computed) or it gives a raw
``sequence`` of dimensions together with generator ``degrees``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .errors import ExtVanishError, OverflowGuard
from .exactmath import FieldSpec

CONFIG_SCHEMA = "extvanish.config/1"

PRESETS = ("trunc-poly", "quantum-ci", "exterior", "group")
GROUPS = ("cyclic", "klein-four", "dihedral", "symmetric", "elementary-abelian", "quaternion")
ACTING_KINDS = ("ext-generators", "degree-two-operators", "degrees")
DEFAULT_N_MAX = 40
DEFAULT_GENERATOR_DEGREE = 6


class ConfigError(ExtVanishError, ValueError):
    """Invalid configuration; ``key`` names the offending entry."""

    def __init__(self, key: str, message: str):
        super().__init__(f"config key '{key}': {message}")
        self.key = key


@dataclass
class RunConfig:
    """A validated configuration; ``raw`` is echoed into reports."""

    raw: dict
    base_dir: Path = dc_field(default_factory=Path.cwd, repr=False)
    algebra: dict | None = None
    m: object = "trivial"
    n: object = "trivial"
    n_max: int = DEFAULT_N_MAX
    acting: dict = dc_field(default_factory=lambda: {"kind": "ext-generators", "max_degree": DEFAULT_GENERATOR_DEGREE})
    sequence: list | None = None
    sequence_start: int = 0
    degrees: list | None = None
    characteristic: int = 0
    guard: int = 8
    seed: int | None = None
    holdout_from: int | None = None
    regular_element: bool = True

    @property
    def field(self) -> FieldSpec:
        return FieldSpec(self.characteristic)

    def resolve_path(self, value: str) -> Path:
        p = Path(value)
        return p if p.is_absolute() else self.base_dir / p


def _int(raw: dict, key: str, default=None, minimum: int | None = None, name: str | None = None) -> int | None:
    name = name or key
    if key not in raw:
        return default
    v = raw[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(name, f"expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ConfigError(name, f"must be at least {minimum}")
    return v


def _module_spec(raw: dict, key: str):
    from .algebra.modules import parse_module_kind

    v = raw.get(key, "trivial")
    try:
        kind, i = parse_module_kind(v)
    except ValueError:
        raise ConfigError(key, f"unknown module {v!r}; use trivial, regular or {{\"syzygy\": i}}") from None
    if kind == "syzygy" and i < 1:
        raise ConfigError(key, "syzygy index must be at least 1")
    return v


def _check_prime(p, key: str) -> int:
    if isinstance(p, bool) or not isinstance(p, int):
        raise ConfigError(key, f"expected an integer characteristic, got {p!r}")
    try:
        FieldSpec(p)
    except ValueError:
        raise ConfigError(key, f"{p} is neither 0 nor a prime") from None
    return p


def _algebra_spec(a) -> dict:
    if not isinstance(a, dict):
        raise ConfigError("algebra", "expected an object")
    if "p" not in a:
        raise ConfigError("algebra.p", "missing field characteristic")
    _check_prime(a["p"], "algebra.p")
    sources = [k for k in ("preset", "group_table", "structure_constants") if k in a]
    if len(sources) != 1:
        raise ConfigError("algebra", "give exactly one of preset, group_table, structure_constants")
    if "preset" in a:
        preset = a["preset"]
        if preset not in PRESETS:
            raise ConfigError("algebra.preset", f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        need = {"trunc-poly": ("c", "a"), "quantum-ci": ("c", "a", "q"), "exterior": ("c",), "group": ("group",)}
        for k in need[preset]:
            if k not in a:
                raise ConfigError(f"algebra.{k}", f"required for preset {preset}")
        for k in ("c", "a", "n", "r"):
            if k in a:
                _int(a, k, minimum=1, name=f"algebra.{k}")
        if preset == "group":
            if a["group"] not in GROUPS:
                raise ConfigError("algebra.group", f"unknown group {a['group']!r}; choose from {', '.join(GROUPS)}")
            if a["group"] in ("cyclic", "dihedral", "symmetric") and "n" not in a:
                raise ConfigError("algebra.n", f"required for group {a['group']}")
            if a["group"] == "elementary-abelian" and "r" not in a:
                raise ConfigError("algebra.r", "required for group elementary-abelian")
    return a


def parse_config(raw: dict, base_dir: Path | None = None) -> RunConfig:
    """Validate a configuration object."""
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    schema = raw.get("schema")
    if schema != CONFIG_SCHEMA:
        raise ConfigError("schema", f"expected {CONFIG_SCHEMA!r}, got {schema!r}")
    known = {"schema", "algebra", "M", "N", "n_max", "acting_ring", "sequence", "sequence_start", "degrees",
             "characteristic", "guard", "seed", "holdout_from", "regular_element", "comment"}
    for k in raw:
        if k not in known:
            raise ConfigError(k, "unknown key")
    cfg = RunConfig(raw=raw, base_dir=base_dir or Path.cwd())
    cfg.guard = _int(raw, "guard", 8, minimum=4)
    cfg.seed = _int(raw, "seed", None, minimum=0)
    cfg.holdout_from = _int(raw, "holdout_from", None, minimum=1)
    if "regular_element" in raw:
        if not isinstance(raw["regular_element"], bool):
            raise ConfigError("regular_element", "expected true or false")
        cfg.regular_element = raw["regular_element"]
    if ("algebra" in raw) == ("sequence" in raw):
        raise ConfigError("algebra", "give exactly one of 'algebra' or 'sequence'")
    if "sequence" in raw:
        seq = raw["sequence"]
        if not isinstance(seq, list) or not seq or any(isinstance(x, bool) or not isinstance(x, int) or x < 0
                                                      for x in seq):
            raise ConfigError("sequence", "expected a nonempty list of nonnegative integers")
        cfg.sequence = seq
        cfg.sequence_start = _int(raw, "sequence_start", 0, minimum=0)
        degs = raw.get("degrees")
        if not isinstance(degs, list) or not degs or any(isinstance(x, bool) or not isinstance(x, int) or x < 1
                                                        for x in degs):
            raise ConfigError("degrees", "expected a nonempty list of positive integers")
        cfg.degrees = degs
        cfg.characteristic = _check_prime(raw.get("characteristic", 2), "characteristic")
        cfg.acting = {"kind": "degrees", "degrees": degs}
        return cfg
    cfg.algebra = _algebra_spec(raw["algebra"])
    cfg.characteristic = cfg.algebra["p"]
    cfg.m = _module_spec(raw, "M")
    cfg.n = _module_spec(raw, "N")
    cfg.n_max = _int(raw, "n_max", DEFAULT_N_MAX, minimum=1)
    acting = raw.get("acting_ring", {"kind": "ext-generators", "max_degree": DEFAULT_GENERATOR_DEGREE})
    if not isinstance(acting, dict) or acting.get("kind") not in ACTING_KINDS:
        raise ConfigError("acting_ring.kind", f"choose from {', '.join(ACTING_KINDS)}")
    kind = acting["kind"]
    if kind == "ext-generators":
        acting = {"kind": kind, "max_degree": _int(acting, "max_degree", DEFAULT_GENERATOR_DEGREE, minimum=1,
                                                   name="acting_ring.max_degree")}
    elif kind == "degree-two-operators":
        if cfg.algebra.get("preset") not in ("trunc-poly", "quantum-ci", "exterior"):
            raise ConfigError("acting_ring.kind", "degree-two-operators needs a trunc-poly, quantum-ci or exterior preset")
    else:
        degs = acting.get("degrees")
        if not isinstance(degs, list) or not degs or any(isinstance(x, bool) or not isinstance(x, int) or x < 1
                                                        for x in degs):
            raise ConfigError("acting_ring.degrees", "expected a nonempty list of positive integers")
    cfg.acting = acting
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<root>", f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_config(raw, path.parent)


def read_group_table(path: Path) -> tuple[list[str], list[list[int]]]:
    """CSV with a header row of element labels, then one row of indices per element."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if len(rows) < 2:
        raise ConfigError("algebra.group_table", "table needs a header row and at least one data row")
    header = [h.strip() for h in rows[0]]
    try:
        table = [[int(x) for x in r] for r in rows[1:]]
    except ValueError:
        raise ConfigError("algebra.group_table", "entries must be integer indices") from None
    if len(header) != len(table) or any(len(r) != len(header) for r in table):
        raise ConfigError("algebra.group_table", "table must be square and match the header")
    return header, table


def build_algebra(cfg: RunConfig):
    """Construct the configured algebra."""
    from .algebra import algebras as al

    a = cfg.algebra
    f = cfg.field
    if "preset" in a:
        preset = a["preset"]
        if preset == "trunc-poly":
            return al.make_truncated_polynomial(a["c"], a["a"], f)
        if preset == "quantum-ci":
            return al.make_quantum_ci(a["c"], a["a"], a["q"], f)
        if preset == "exterior":
            return al.make_exterior(a["c"], f)
        group = a["group"]
        tables = {
            "cyclic": lambda: al.cyclic_group(a["n"]),
            "klein-four": al.klein_four_group,
            "dihedral": lambda: al.dihedral_group(a["n"]),
            "symmetric": lambda: al.symmetric_group(a["n"]),
            "elementary-abelian": lambda: al.elementary_abelian_group(a.get("prime", cfg.characteristic), a["r"]),
            "quaternion": al.quaternion_group,
        }
        table = tables[group]()
        if len(table) > al.CONSTRUCTOR_DIM_CAP:
            raise OverflowGuard(f"group of order {len(table)} exceeds the dimension cap")
        return al.make_group_algebra(table, f, name=f"group:{group}")
    if "group_table" in a:
        labels, table = read_group_table(cfg.resolve_path(a["group_table"]))
        return al.make_group_algebra(table, f, labels=labels, name="group:table")
    path = cfg.resolve_path(a["structure_constants"])
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("algebra.structure_constants", f"cannot load {path}: {exc}") from None
    if isinstance(data, list):
        data = {"mult": data}
    if "mult" not in data:
        raise ConfigError("algebra.structure_constants", "file must contain 'mult'")
    return al.make_algebra(data["mult"], data.get("unit_index", 0), f, data.get("labels"), name="structure-constants")
