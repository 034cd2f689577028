"""Command line front end: ``scenopt {bounds,sphere,opf}``.

Exit codes: 0 success, 1 I/O failure, 2 invalid parameters.
"""
from __future__ import annotations

import argparse
import contextlib
import hashlib
import json
import os
import sys

from . import __version__, presets
from .grid_opf import (
    APPROACHES,
    EmpiricalLoadSampler,
    ExactLoadSampler,
    GridModel,
    GridModelError,
    SimulationConfig,
    demo_feeder,
    demo_profile,
    demo_sampler,
    read_load_csv,
    run_four_approach_simulation,
)
from .risk_bounds import (
    BoundParams,
    InvalidParameterError,
    build_risk_table,
    min_samples_basic,
    min_samples_discard,
)
from .sphere_example import (
    reproduce_table_one,
    table_one_config,
    table_one_csv,
    table_one_exact_rows,
)

EXIT_IO = 1
EXIT_INVALID = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _common(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default,
                        help="RNG seed (overrides $SCENOPT_SEED)")
    parser.add_argument("--jobs", type=int, default=default, help="worker processes")
    parser.add_argument("--out", default=default, help="output file (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=default)


def build_parser():
    parser = _Parser(prog="scenopt", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"scenopt {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", help="risk lookup table or sample-size inversion")
    _common(b, suppress=True)
    b.add_argument("--figure1", action="store_true", help="N=1000, d=30, beta=1e-3, R<=50")
    b.add_argument("--n", type=int, help="kept scenarios N")
    b.add_argument("--d", type=int, help="decision variables d")
    b.add_argument("--beta", type=float, help="confidence parameter")
    b.add_argument("--rmax", type=int, help="largest removal count in the table")
    b.add_argument("--samples-for", action="store_true",
                   help="print the smallest N meeting (eps, beta, d[, r])")
    b.add_argument("--eps", type=float, help="risk level for --samples-for")
    b.add_argument("--r", type=int, default=0, help="removals for --samples-for")

    s = sub.add_parser("sphere", help="reproduce the random-radius sphere table")
    _common(s, suppress=True)
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--table1a", action="store_true", help="d=30 preset (default)")
    grp.add_argument("--table1b", action="store_true", help="d=100 preset")
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--method", choices=("closed-form", "engine"), default="closed-form")
    s.add_argument("--computed-budget", action="store_true",
                   help="choose the new approach's removals from the risk certificate")

    o = sub.add_parser("opf", help="four-approach optimal power flow simulation")
    _common(o, suppress=True)
    o.add_argument("--grid", help="grid model JSON (default: bundled 8-node feeder)")
    o.add_argument("--load-csv", help="load scenarios CSV (columns p_1..p_n,q_1..q_n)")
    o.add_argument("--approaches", default=",".join(APPROACHES))
    o.add_argument("--no-uncertainty", action="store_true")
    o.add_argument("--eps", type=float, default=presets.OPF_EPS)
    o.add_argument("--beta", type=float, default=presets.OPF_BETA)
    o.add_argument("--steps", type=int, default=presets.OPF_STEPS)
    o.add_argument("--n-fresh", type=int, default=10_000)
    return parser


def _resolve_seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SCENOPT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise InvalidParameterError(f"SCENOPT_SEED must be an integer, got {env!r}") from exc


def _config_hash(args):
    items = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "jobs")}
    blob = json.dumps(items, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def _header(args):
    return f"# scenopt {__version__} config={_config_hash(args)} seed={args.seed}\n"


def _meta(args):
    return {"version": __version__, "config": _config_hash(args), "seed": args.seed}


@contextlib.contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_bounds(args):
    if args.samples_for:
        if args.eps is None or args.beta is None or args.d is None:
            raise InvalidParameterError("--samples-for needs --eps, --beta and --d")
        n = (min_samples_basic(args.eps, args.beta, args.d) if args.r == 0
             else min_samples_discard(args.eps, args.beta, args.d, args.r))
        with _sink(args.out) as fh:
            if args.format == "json":
                json.dump({"meta": _meta(args), "eps": args.eps, "beta": args.beta,
                           "d": args.d, "r": args.r, "N": n}, fh)
                fh.write("\n")
            else:
                fh.write(f"{n}\n")
        return 0
    if args.figure1:
        fig = presets.FIGURE_ONE
        n = fig["N"] if args.n is None else args.n
        d = fig["d"] if args.d is None else args.d
        beta = fig["beta"] if args.beta is None else args.beta
        rmax = fig["r_max"] if args.rmax is None else args.rmax
    else:
        if None in (args.n, args.d, args.beta, args.rmax):
            raise InvalidParameterError("bounds needs --n, --d, --beta and --rmax (or --figure1)")
        n, d, beta, rmax = args.n, args.d, args.beta, args.rmax
    # risk is not used by the table; any admissible value passes validation
    BoundParams(n, d, 0.5, beta, n_removed=0)
    if rmax < 0:
        raise InvalidParameterError("--rmax must be nonnegative")
    table = build_risk_table(n, d, beta, rmax)
    with _sink(args.out) as fh:
        if args.format == "json":
            json.dump({"meta": _meta(args), "N": n, "d": d, "beta": beta,
                       "entries": [{"k": k, "R": R, "epsilon": float(f"{v:.12g}")}
                                   for (k, R), v in sorted(table.entries.items())]}, fh)
            fh.write("\n")
        else:
            fh.write(_header(args))
            table.to_csv(fh)
    return 0


def cmd_sphere(args):
    if args.trials < 1:
        raise InvalidParameterError("--trials must be positive")
    preset = "b" if args.table1b else "a"
    config = table_one_config(preset, trials=args.trials, seed=args.seed,
                              preset_budget=not args.computed_budget)
    rows = table_one_exact_rows(config) + reproduce_table_one(config, args.method, jobs=args.jobs)
    with _sink(args.out) as fh:
        if args.format == "json":
            json.dump({"meta": _meta(args), "rows": [
                {"dist": r.dist, "approach": r.approach, "N": r.n_samples or None,
                 "r": r.n_removed if r.approach != "exact" else None,
                 "mean_radius": float(f"{r.mean_radius:.6g}"),
                 "stderr": float(f"{r.stderr:.3g}") if r.approach != "exact" else None,
                 "trials": r.trials, "seed": r.seed} for r in rows]}, fh)
            fh.write("\n")
        else:
            fh.write(_header(args))
            table_one_csv(rows, fh)
    return 0


def cmd_opf(args):
    approaches = tuple(a.strip() for a in args.approaches.split(",") if a.strip())
    unknown = set(approaches) - set(APPROACHES)
    if unknown or not approaches:
        raise InvalidParameterError(f"unknown approaches {sorted(unknown)}; pick from {APPROACHES}")
    BoundParams(1, 1, args.eps, args.beta)
    if args.steps < 1 or args.steps > presets.OPF_STEPS:
        raise InvalidParameterError(f"--steps must lie in 1..{presets.OPF_STEPS}")
    if args.grid:
        with open(args.grid) as fh:
            grid = GridModel.from_json(fh.read())
    else:
        grid = demo_feeder()
    if grid.n_generators == 0:
        raise InvalidParameterError("grid has no generators to dispatch")
    profile = demo_profile(grid, n_steps=args.steps)
    if args.no_uncertainty:
        sampler = ExactLoadSampler()
    elif args.load_csv:
        with open(args.load_csv, newline="") as fh:
            sampler = EmpiricalLoadSampler(*read_load_csv(fh, grid.n_nodes))
    else:
        sampler = demo_sampler()
    config = SimulationConfig(eps=args.eps, beta=args.beta, seed=args.seed,
                              approaches=approaches, n_fresh=args.n_fresh)
    report = run_four_approach_simulation(grid, profile, sampler, config, jobs=args.jobs)
    summary = {"meta": _meta(args), **report.summary()}
    out = args.out or "opf_report.csv"
    with _sink(out) as fh:
        if args.format == "json":
            json.dump({"meta": _meta(args), "records": [vars(r) for r in report.records]}, fh,
                      default=float)
            fh.write("\n")
        else:
            fh.write(_header(args))
            report.to_csv(fh)
    if out != "-":
        stem = out.rsplit(".", 1)[0] if "." in os.path.basename(out) else out
        with open(stem + ".summary.json", "w") as fh:
            json.dump(summary, fh, indent=1, sort_keys=True)
            fh.write("\n")
    else:
        sys.stderr.write(json.dumps(summary, indent=1, sort_keys=True) + "\n")
    return 0


COMMANDS = {"bounds": cmd_bounds, "sphere": cmd_sphere, "opf": cmd_opf}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("jobs", "out", "format"):
        if not hasattr(args, name):
            setattr(args, name, None)
    args.format = args.format or "csv"
    args.jobs = args.jobs or os.cpu_count() or 1
    try:
        args.seed = _resolve_seed(args)
        return COMMANDS[args.command](args)
    except (InvalidParameterError, GridModelError, ValueError) as exc:
        print(f"scenopt: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"scenopt: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
