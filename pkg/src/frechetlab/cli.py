"""Command line interface.

Subcommands: check-frechet, interpolate, decompose, explore, growth,
image.  Every subcommand reads an optional flat key=value config file
(--config); explicit flags win over the file.  Data goes to CSV (stdout,
or --out with a JSON run manifest written next to it); exit codes are
0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import report
from .errors import (FrechetlabError, InconsistentDecompositionError,
                     ModelParseError)
from .diffs import check_frechet, check_frechet_variable
from .explore import coverage_fraction, growth_table, image_cloud, sample_graph
from .interp import (GridSpec, build_interpolant, check_integer_extension,
                     check_rational_refinement)
from .parsing import parse_model, parse_poly, parse_scalar
from .sampling import Lcg
from .scalars import enumerate_by_height
from .shear import shear_decompose
from .witness import WitnessModel


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


def load_config(path: Optional[str]) -> dict:
    """Flat key=value lines; '#' starts a comment; keys match flag names."""
    if not path:
        return {}
    cfg = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError("--config",
                                     f"line {lineno} is not key=value: {raw!r}")
                key, value = line.split("=", 1)
                cfg[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError("--config", str(exc))
    return cfg


def _opt(args, cfg: dict, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in cfg:
        return cfg[key]
    return default


def _flag(args, cfg: dict, key: str) -> bool:
    if getattr(args, key, False):
        return True
    return str(cfg.get(key, "")).lower() in ("1", "true", "yes", "on")


def _require(value, flag: str):
    if value is None:
        raise UsageError(flag, "required")
    return value


def _int(value, flag: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(flag, f"not an integer: {value!r}")


def _ints(value, flag: str) -> list[int]:
    try:
        return [int(v) for v in str(value).split(",") if v.strip() != ""]
    except ValueError:
        raise UsageError(flag, f"not a comma-separated integer list: {value!r}")


def _scalar(value, d: int, flag: str):
    try:
        return parse_scalar(str(value), d)
    except ModelParseError as exc:
        raise UsageError(flag, str(exc))


def _scalars(value, d: int, flag: str) -> list:
    return [_scalar(part, d, flag) for part in str(value).split(",")]


def _vectors(value, d: int, flag: str) -> list[tuple]:
    return [tuple(_scalars(part, d, flag)) for part in str(value).split(";")]


def _windows(value, d: int, flag: str) -> list[tuple]:
    out = []
    for part in str(value).split(";"):
        bounds = _scalars(part, d, flag)
        if len(bounds) != 2:
            raise UsageError(flag, f"window needs lo,hi — got {part!r}")
        out.append((bounds[0], bounds[1]))
    return out


def _model(value, d: int, flag: str) -> WitnessModel:
    try:
        return parse_model(str(value), d)
    except ModelParseError as exc:
        raise UsageError(flag, str(exc))


def _d_of(args, cfg) -> int:
    return _int(_opt(args, cfg, "d", 2), "--d")


# -- subcommands ---------------------------------------------------------------


def cmd_check_frechet(args) -> int:
    cfg = load_config(args.config)
    d = _d_of(args, cfg)
    model = _model(_require(_opt(args, cfg, "model"), "--model"), d, "--model")
    order = _opt(args, cfg, "order")
    m = _int(order, "--order") if order is not None else model.declared_order()
    samples = _int(_opt(args, cfg, "samples", 100), "--samples")
    seed = _int(_opt(args, cfg, "seed", 0), "--seed")
    variable = _flag(args, cfg, "variable_steps")
    n = model.arity()
    rng = Lcg(seed)
    if variable:
        sample = [(rng.point(n, d), rng.distinct_steps(n, m + 1, d))
                  for _ in range(samples)]
        rep = check_frechet_variable(model, m, sample, d)
        headers = (["index"] + [f"x{j+1}" for j in range(n)]
                   + [f"h{k+1}_{j+1}" for k in range(m + 1) for j in range(n)]
                   + ["delta"])
        rows = []
        for i, (x, steps) in enumerate(sample):
            if rep.first_violation is not None and i + 1 > rep.tested_pairs:
                break
            from .diffs import variable_step_diff
            value = variable_step_diff(model, x, steps, d)
            rows.append([str(i)] + [report.render_decimal(v) for v in x]
                        + [report.render_decimal(v) for s in steps for v in s]
                        + [report.render_decimal(value)])
    else:
        sample = rng.pair_sample(n, samples, d)
        rep = check_frechet(model, m, sample, d)
        headers = (["index"] + [f"x{j+1}" for j in range(n)]
                   + [f"h{j+1}" for j in range(n)] + ["delta"])
        rows = []
        for i, (x, h) in enumerate(sample):
            if rep.first_violation is not None and i + 1 > rep.tested_pairs:
                break
            from .diffs import fixed_step_diff
            value = fixed_step_diff(model, x, h, m + 1, d)
            rows.append([str(i)] + [report.render_decimal(v) for v in x]
                        + [report.render_decimal(v) for v in h]
                        + [report.render_decimal(value)])
    data = report.csv_bytes(headers, rows)
    manifest = report.build_manifest(
        "check-frechet", model.to_text(),
        {"order": m, "samples": samples, "seed": seed, "d": d,
         "variable_steps": variable},
        len(rows), report.sha256_hex(data),
        ok=rep.ok, tested_pairs=rep.tested_pairs)
    report.emit(data, manifest, args.out, args.manifest)
    return 0 if rep.ok else 1


def _grid_from_args(args, cfg, d: int, model_arity: int) -> GridSpec:
    m = _int(_require(_opt(args, cfg, "m"), "--m"), "--m")
    a = _scalars(_require(_opt(args, cfg, "a"), "--a"), d, "--a")
    h = _scalars(_require(_opt(args, cfg, "h"), "--h"), d, "--h")
    gamma = _vectors(_require(_opt(args, cfg, "gamma"), "--gamma"), d, "--gamma")
    try:
        return GridSpec(tuple(a), tuple(h), tuple(gamma), m, d)
    except FrechetlabError as exc:
        raise UsageError("--a/--h/--gamma", str(exc))


def cmd_interpolate(args) -> int:
    cfg = load_config(args.config)
    d = _d_of(args, cfg)
    model = _model(_require(_opt(args, cfg, "model"), "--model"), d, "--model")
    grid = _grid_from_args(args, cfg, d, model.arity())
    if model.arity() > grid.n:
        raise UsageError("--a", f"model needs arity {model.arity()}, "
                                f"grid has n={grid.n}")
    P = build_interpolant(model, grid)
    checks: dict = {}
    ok = True
    box = _opt(args, cfg, "check_box")
    if box is not None:
        B = _int(box, "--check-box")
        rep = check_integer_extension(P, model, grid, (-B, grid.m + B))
        checks["integer_extension"] = {
            "box": [-B, grid.m + B], "ok": rep.ok, "checked": rep.checked}
        if not rep.ok:
            idx, lhs, rhs = rep.counterexample
            checks["integer_extension"]["counterexample_index"] = list(idx)
            ok = False
    dens = _opt(args, cfg, "denominators")
    if dens is not None:
        ps = _ints(dens, "--denominators")
        if len(ps) != grid.n + 1 or any(p == 0 for p in ps):
            raise UsageError("--denominators",
                             f"need {grid.n + 1} nonzero integers")
        refined_ok = check_rational_refinement(model, grid, ps)
        checks["rational_refinement"] = {"denominators": ps, "ok": refined_ok}
        ok = ok and refined_ok
    headers = [f"e{k+1}" for k in range(grid.n + 1)] + ["coefficient", "decimal"]
    data = report.csv_bytes(headers, report.poly_rows(P))
    manifest = report.build_manifest(
        "interpolate", model.to_text(),
        {"m": grid.m, "a": [str(x) for x in grid.a],
         "h": [str(x) for x in grid.h],
         "gamma": [[str(x) for x in v] for v in grid.gamma], "d": d},
        (grid.m + 1) ** (grid.n + 1), report.sha256_hex(data),
        poly_text=P.to_text(), checks=checks, ok=ok)
    report.emit(data, manifest, args.out, args.manifest)
    if args.out:
        print(P.to_text())
    return 0 if ok else 1


def cmd_decompose(args) -> int:
    cfg = load_config(args.config)
    d = _d_of(args, cfg)
    poly_text = _require(_opt(args, cfg, "poly"), "--poly")
    m = _opt(args, cfg, "m")
    try:
        P = parse_poly(str(poly_text), 2, d)
    except ModelParseError as exc:
        raise UsageError("--poly", str(exc))
    if m is not None:
        target = _int(m, "--m")
        if P.maxdeg > target:
            raise UsageError("--m", f"polynomial has per-variable degree "
                                    f"{P.maxdeg} > {target}")
        P = P.widen(target)
    D = shear_decompose(P)
    for i, a in enumerate(D.coefficients):
        print(f"A_{i} = {a.to_text()}")
    print(f"N = {D.leading_index}")
    data = report.csv_bytes(["i", "a_i"], report.decomposition_rows(D))
    manifest = report.build_manifest(
        "decompose", None,
        {"poly": str(poly_text), "m": D.m, "d": d},
        len(D.coefficients), report.sha256_hex(data),
        leading_index=D.leading_index)
    if args.out:
        report.emit(data, manifest, args.out, args.manifest)
    return 0


def cmd_explore(args) -> int:
    cfg = load_config(args.config)
    d = _d_of(args, cfg)
    model = _model(_require(_opt(args, cfg, "model"), "--model"), d, "--model")
    windows = _windows(_require(_opt(args, cfg, "window"), "--window"), d,
                       "--window")
    H = _int(_require(_opt(args, cfg, "height"), "--height"), "--height")
    try:
        cloud = sample_graph(model, windows, H, d)
    except FrechetlabError as exc:
        raise UsageError("--window/--height", str(exc))
    extra: dict = {}
    grid = None
    rect_text = _opt(args, cfg, "rect")
    if rect_text is not None:
        bounds = _scalars(rect_text, d, "--rect")
        if len(bounds) != 4:
            raise UsageError("--rect", "need xlo,xhi,ylo,yhi")
        r = _int(_opt(args, cfg, "resolution", 50), "--resolution")
        try:
            grid = coverage_fraction(
                cloud, ((bounds[0], bounds[1]), (bounds[2], bounds[3])), r)
        except FrechetlabError as exc:
            raise UsageError("--rect", str(exc))
        extra["coverage"] = report.render_decimal(grid.fraction)
        extra["resolution"] = r
    data = report.csv_bytes(cloud.columns,
                            report.cloud_rows(cloud, verify=model.eval))
    manifest = report.build_manifest(
        "explore", model.to_text(),
        {"window": cloud.provenance["window"], "height": H, "d": d},
        len(cloud), report.sha256_hex(data), **extra)
    report.emit(data, manifest, args.out, args.manifest)
    if args.plot:
        report.figure_cloud(cloud, args.plot, title=model.to_text())
        if grid is not None:
            stem, dot, ext = args.plot.rpartition(".")
            report.figure_coverage(grid, f"{stem}.coverage{dot}{ext}")
    return 0


def cmd_growth(args) -> int:
    cfg = load_config(args.config)
    d = _d_of(args, cfg)
    model = _model(_require(_opt(args, cfg, "model"), "--model"), d, "--model")
    windows = _windows(_require(_opt(args, cfg, "window"), "--window"), d,
                       "--window")
    heights = _ints(_require(_opt(args, cfg, "heights"), "--heights"),
                    "--heights")
    try:
        table = growth_table(model, windows, heights, d)
    except FrechetlabError as exc:
        raise UsageError("--window/--heights", str(exc))
    data = report.csv_bytes(["height", "sup_abs", "count"],
                            report.growth_rows(table))
    manifest = report.build_manifest(
        "growth", model.to_text(),
        {"window": table.provenance["window"], "heights": heights, "d": d},
        len(table.rows), report.sha256_hex(data),
        sup_values=[None if sup is None else report.render_decimal(sup)
                    for _, sup, _ in table.rows])
    report.emit(data, manifest, args.out, args.manifest)
    if args.plot:
        report.figure_growth(table, args.plot, title=model.to_text())
    return 0


def cmd_image(args) -> int:
    cfg = load_config(args.config)
    d = _d_of(args, cfg)
    model = _model(_require(_opt(args, cfg, "model"), "--model"), d, "--model")
    grid = _grid_from_args(args, cfg, d, model.arity())
    s = _int(_require(_opt(args, cfg, "axis"), "--axis"), "--axis")
    if not 1 <= s <= grid.n:
        raise UsageError("--axis", f"must be in 1..{grid.n}")
    t_height = _int(_opt(args, cfg, "t_height", 2), "--t-height")
    t_window = _opt(args, cfg, "t_window", "-2,2")
    windows = _windows(t_window, d, "--t-window")
    if len(windows) == 1:
        windows = windows * (grid.n + 1)
    if len(windows) != grid.n + 1:
        raise UsageError("--t-window", f"need 1 or {grid.n + 1} windows")
    try:
        axes_pts = [enumerate_by_height(t_height, w, d) for w in windows]
    except FrechetlabError as exc:
        raise UsageError("--t-window", str(exc))
    P = build_interpolant(model, grid)
    samples = [()]
    for pts in axes_pts:
        samples = [t + (z,) for t in samples for z in pts]
    cloud = image_cloud(P, grid, s, samples)
    data = report.csv_bytes(cloud.columns, report.cloud_rows(cloud))
    manifest = report.build_manifest(
        "image", model.to_text(),
        {"m": grid.m, "a": [str(x) for x in grid.a],
         "h": [str(x) for x in grid.h],
         "gamma": [[str(x) for x in v] for v in grid.gamma],
         "axis": s, "t_height": t_height, "d": d},
        len(cloud), report.sha256_hex(data),
        skipped_on_variety=cloud.provenance["skipped_on_variety"],
        total_samples=cloud.provenance["total_samples"])
    report.emit(data, manifest, args.out, args.manifest)
    if args.plot:
        report.figure_cloud(cloud, args.plot, title=model.to_text())
    return 0


# -- parser ----------------------------------------------------------------------


def _common(sub: argparse.ArgumentParser, plot: bool = False):
    sub.add_argument("--d", help="square-free field parameter (default 2)")
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--out", help="write CSV here (default: stdout)")
    sub.add_argument("--manifest",
                     help="write the JSON run manifest here "
                          "(default: <out>.manifest.json)")
    if plot:
        sub.add_argument("--plot", help="also render a PNG figure here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frechetlab",
        description="Exact experiments with (dis)continuous solutions of "
                    "the Fréchet functional equation over Q(sqrt d).")
    subs = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    p = subs.add_parser("check-frechet",
                        help="test the difference equation on seeded samples")
    p.add_argument("--model", help="model s-expression, e.g. '(surd 1)'")
    p.add_argument("--order", help="equation order m (default: declared)")
    p.add_argument("--samples", help="number of (x, h) pairs (default 100)")
    p.add_argument("--seed", help="LCG seed (default 0)")
    p.add_argument("--variable-steps", action="store_true",
                   dest="variable_steps",
                   help="use m+1 distinct steps per sample")
    _common(p)
    p.set_defaults(func=cmd_check_frechet)

    p = subs.add_parser("interpolate",
                        help="build the grid interpolant and run extension "
                             "checks")
    p.add_argument("--model", help="model s-expression")
    p.add_argument("--m", help="degree bound")
    p.add_argument("--a", help="base point, comma-separated scalars")
    p.add_argument("--h", help="steps h1..h_{n+1}, comma-separated")
    p.add_argument("--gamma", help="directions, ';'-separated vectors")
    p.add_argument("--check-box", dest="check_box",
                   help="verify integer extension on [-B, m+B]")
    p.add_argument("--denominators",
                   help="verify rational refinement with these p_i")
    _common(p)
    p.set_defaults(func=cmd_interpolate)

    p = subs.add_parser("decompose",
                        help="shear-decompose a bivariate polynomial")
    p.add_argument("--poly", help="bivariate polynomial text, e.g. 'x*y'")
    p.add_argument("--m", help="degree bound (default: inferred)")
    _common(p)
    p.set_defaults(func=cmd_decompose)

    p = subs.add_parser("explore", help="sample a witness graph as a cloud")
    p.add_argument("--model", help="model s-expression")
    p.add_argument("--window", help="per-axis lo,hi windows, ';'-separated")
    p.add_argument("--height", help="height bound H")
    p.add_argument("--rect", help="coverage rectangle xlo,xhi,ylo,yhi")
    p.add_argument("--resolution", help="coverage grid resolution (default 50)")
    _common(p, plot=True)
    p.set_defaults(func=cmd_explore)

    p = subs.add_parser("growth", help="sup |f| as the height bound grows")
    p.add_argument("--model", help="model s-expression")
    p.add_argument("--window", help="window lo,hi")
    p.add_argument("--heights", help="strictly increasing bounds, e.g. 10,50")
    _common(p, plot=True)
    p.set_defaults(func=cmd_growth)

    p = subs.add_parser("image",
                        help="image of the graph parametrization off the "
                             "critical variety")
    p.add_argument("--model", help="model s-expression")
    p.add_argument("--m", help="degree bound")
    p.add_argument("--a", help="base point")
    p.add_argument("--h", help="steps")
    p.add_argument("--gamma", help="directions")
    p.add_argument("--axis", help="section axis s in 1..n")
    p.add_argument("--t-window", dest="t_window",
                   help="parameter window(s) (default -2,2)")
    p.add_argument("--t-height", dest="t_height",
                   help="parameter height bound (default 2)")
    _common(p, plot=True)
    p.set_defaults(func=cmd_image)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InconsistentDecompositionError:
        raise
    except FrechetlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def cli_main(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
