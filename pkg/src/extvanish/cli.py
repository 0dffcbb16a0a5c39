"""Command line entry point: ``extvanish {ext,analyze,lcm,resolve}``.

Exit codes: 0 success, 1 usage or configuration error, 2 the dimension
window does not fit a rational generating function, 3 a resource cap was
hit.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import ConfigError, RunConfig, build_algebra, load_config
from .errors import ExtVanishError, InsufficientData, NotRational, ResourceCap
from .exactmath import SeriesWindow
from .hilbert import lcm_degrees
from .report import ReportDocument, summary_text
from .vanishing import DEFAULT_SEED, analyze_full, verify_verdict

log = logging.getLogger("extvanish")

EXIT_OK, EXIT_CONFIG, EXIT_NOT_RATIONAL, EXIT_RESOURCE = 0, 1, 2, 3


class Context:
    """Algebra, modules and resolution for one configuration."""

    def __init__(self, cfg: RunConfig):
        from .algebra import minimal_resolution, standard_module

        self.cfg = cfg
        self.algebra = build_algebra(cfg)
        self.m = standard_module(self.algebra, cfg.m)
        self.n = standard_module(self.algebra, cfg.n)
        self.resolution = minimal_resolution(self.algebra, self.m, cfg.n_max + 1)

    def ext_dims(self) -> SeriesWindow:
        from .algebra import ext_dims

        return ext_dims(self.algebra, self.m, self.n, self.cfg.n_max, resolution=self.resolution).dims


def _split(total: SeriesWindow, holdout_from: int | None) -> tuple[SeriesWindow, SeriesWindow | None]:
    h = holdout_from if holdout_from is not None else total.start + (2 * len(total)) // 3
    if not total.start < h < total.stop:
        raise ConfigError("holdout_from", f"must lie strictly inside the window [{total.start}, {total.stop - 1}]")
    return total.slice(total.start, h), total.slice(h)


def _acting(ctx: Context, analysis_stop: int):
    """Generator degrees, whether to pass to the even part, and operator window (or None)."""
    from .algebra import eisenbud_operator, ext_ring_generators, operator_window, trivial_module

    cfg = ctx.cfg
    acting = cfg.acting
    kind = acting["kind"]
    n1 = analysis_stop - 1
    if kind == "degrees":
        return list(acting["degrees"]), False, None
    if kind == "degree-two-operators":
        c = cfg.algebra["c"]
        window = None
        if cfg.regular_element and ctx.algebra.name == "trunc-poly" and c == 1:
            op = eisenbud_operator(ctx.resolution)
            window = operator_window(ctx.algebra, ctx.m, ctx.n, [op], 0, n1, resolution=ctx.resolution)
        return [2] * c, False, window
    D = acting["max_degree"]
    m_is_trivial = ctx.m.name == "trivial"
    res = ctx.resolution if m_is_trivial else None
    if res is None:
        from .algebra import minimal_resolution

        res = minimal_resolution(ctx.algebra, trivial_module(ctx.algebra), D + 1)
    gens = ext_ring_generators(ctx.algebra, D, resolution=res)
    if not gens.degrees:
        raise ConfigError("acting_ring.max_degree", f"no Ext generators found in degrees 1..{D}")
    window = None
    if cfg.regular_element and m_is_trivial:
        window = operator_window(ctx.algebra, ctx.m, ctx.n, gens.lifts, 0, n1, resolution=res)
    return gens.degrees, True, window


def run_analysis(cfg: RunConfig, seed: int | None = None, guard: int | None = None,
                 timing: bool = False) -> ReportDocument:
    t0 = time.perf_counter()
    seed = seed if seed is not None else (cfg.seed if cfg.seed is not None else DEFAULT_SEED)
    guard = guard if guard is not None else cfg.guard
    times = {}
    if cfg.sequence is not None:
        total = SeriesWindow(cfg.sequence_start, cfg.sequence)
        analysis, holdout = _split(total, cfg.holdout_from)
        degrees, even, gw = list(cfg.degrees), False, None
    else:
        ctx = Context(cfg)
        total = ctx.ext_dims()
        log.info("Ext dimensions through degree %d computed", cfg.n_max)
        times["ext_s"] = time.perf_counter() - t0
        analysis, holdout = _split(total, cfg.holdout_from)
        degrees, even, gw = _acting(ctx, analysis.stop)
        times["operators_s"] = time.perf_counter() - t0 - times["ext_s"]
    try:
        res = analyze_full(analysis, degrees, cfg.characteristic, guard=guard, even_part=even,
                           graded_window=gw, seed=seed)
    except InsufficientData as exc:
        raise ConfigError("n_max" if cfg.sequence is None else "sequence", str(exc)) from None
    verification = verify_verdict(res.report, holdout) if holdout is not None else None
    echo = dict(cfg.raw)
    echo["effective"] = {"seed": seed, "guard": guard}
    doc = ReportDocument(
        input=echo,
        ext_dims=total,
        analysis_window=analysis,
        holdout=holdout,
        acting_degrees=list(degrees),
        even_degrees=list(res.degrees),
        generating_function=res.gf.to_dict() if res.gf else None,
        reduced=res.reduced.to_dict() if res.reduced else None,
        quasi_polynomial=res.quasi_polynomial.to_dict() if res.quasi_polynomial else None,
        report=res.report,
        witness=res.witness.to_dict() if res.witness else None,
        verification=verification,
    )
    if timing:
        times["total_s"] = time.perf_counter() - t0
        doc.timing = {k: round(v, 6) for k, v in times.items()}
    return doc


# subcommands


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_ext(args) -> int:
    cfg = load_config(args.config)
    if cfg.sequence is not None:
        raise ConfigError("algebra", "the ext command needs an algebra configuration")
    dims = Context(cfg).ext_dims()
    _emit("n,dim\n" + "".join(f"{n},{dims[n]}\n" for n in dims.degrees()), args.out)
    return EXIT_OK


def cmd_resolve(args) -> int:
    from .algebra import minimal_resolution, standard_module

    cfg = load_config(args.config)
    if cfg.sequence is not None:
        raise ConfigError("algebra", "the resolve command needs an algebra configuration")
    alg = build_algebra(cfg)
    res = minimal_resolution(alg, standard_module(alg, cfg.m), cfg.n_max)
    _emit("n,betti\n" + "".join(f"{n},{b}\n" for n, b in enumerate(res.betti)), args.out)
    return EXIT_OK


def _analyze_one(path: str, out: str | None, seed, guard, timing, quiet_stdout: bool) -> tuple[int, str]:
    """Run one configuration; returns (exit code, text for the terminal)."""
    try:
        cfg = load_config(path)
        doc = run_analysis(cfg, seed=seed, guard=guard, timing=timing)
    except NotRational as exc:
        return EXIT_NOT_RATIONAL, f"{path}: no rational fit (the window contradicts a Noetherian fit): {exc}\n"
    except ResourceCap as exc:
        return EXIT_RESOURCE, f"{path}: resource cap: {exc}\n"
    except (ExtVanishError, ValueError) as exc:
        return EXIT_CONFIG, f"{path}: {exc}\n"
    text = summary_text(doc)
    if out:
        Path(out).write_text(doc.to_json())
    elif not quiet_stdout:
        sys.stdout.write(doc.to_json())
    return EXIT_OK, text


def cmd_analyze(args) -> int:
    target = Path(args.config)
    if target.is_dir():
        configs = sorted(str(p) for p in target.glob("*.json"))
        if not configs:
            raise ConfigError("--config", f"no *.json configurations in {target}")
        out_dir = Path(args.out) if args.out else None
        if out_dir:
            out_dir.mkdir(parents=True, exist_ok=True)
        outs = [str(out_dir / (Path(c).stem + ".report.json")) if out_dir else None for c in configs]
        jobs = max(1, args.jobs)
        call = [(c, o, args.seed, args.guard, args.timing, True) for c, o in zip(configs, outs)]
        if jobs == 1:
            results = [_analyze_one(*a) for a in call]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_analyze_one, *zip(*call)))
        worst = EXIT_OK
        for c, (code, text) in zip(configs, results):
            sys.stdout.write(f"== {c} (exit {code})\n{text}")
            worst = max(worst, code)
        return worst
    code, text = _analyze_one(str(target), args.out, args.seed, args.guard, args.timing, False)
    # with --out the JSON goes to the file and the summary to stdout
    (sys.stdout if args.out else sys.stderr).write(text)
    return code


def cmd_lcm(args) -> int:
    if not args.degrees:
        sys.stderr.write("lcm: give at least one degree\n")
        return EXIT_CONFIG
    try:
        value = lcm_degrees(args.degrees)
    except ValueError as exc:
        sys.stderr.write(f"lcm: {exc}\n")
        return EXIT_CONFIG
    sys.stdout.write(f"{value}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extvanish", description="Ext dimensions and their eventual vanishing.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, analysis=False):
        p.add_argument("--config", required=True, help="JSON configuration (or a directory of them for analyze)")
        p.add_argument("--out", help="output file (directory for batch analyze)")
        if analysis:
            p.add_argument("--seed", type=int, default=None, help="seed for the regular element search")
            p.add_argument("--guard", type=int, default=None, help="trailing coefficients that must vanish in a fit")
            p.add_argument("--jobs", type=int, default=1, help="parallel workers for a directory of configs")
            p.add_argument("--timing", action="store_true", help="record wall-clock timings in the report")

    p = sub.add_parser("ext", help="CSV of dim Ext^n(M, N)")
    common(p)
    p.set_defaults(func=cmd_ext)
    p = sub.add_parser("resolve", help="CSV of Betti numbers of the resolution of M")
    common(p)
    p.set_defaults(func=cmd_resolve)
    p = sub.add_parser("analyze", help="classify eventual vanishing; JSON report plus summary")
    common(p, analysis=True)
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("lcm", help="least common multiple of generator degrees")
    p.add_argument("degrees", nargs="*", type=int)
    p.set_defaults(func=cmd_lcm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "guard", None) is not None and args.guard < 4:
        sys.stderr.write("--guard must be at least 4\n")
        return EXIT_CONFIG
    try:
        return args.func(args)
    except NotRational as exc:
        sys.stderr.write(f"no rational fit: {exc}\n")
        return EXIT_NOT_RATIONAL
    except ResourceCap as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_RESOURCE
    except (ExtVanishError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
