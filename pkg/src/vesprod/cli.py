"""
Command line front end.

Exit codes: 0 success, 1 parameters outside the feasible set or an Inada
check failed, 2 usage, parse or I/O error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import contextlib
import sys

import numpy as np

from . import asymptotics, calibrate, report
from .core import (
    PARAM_NAMES,
    DomainError,
    NumericFailure,
    ParameterError,
    ValidatedParams,
    ValidationError,
    validate,
)
from .elasticity import classify_regime, sigma_closed, sigma_scan
from .grid import Grid, Spacing
from .verify import ProbeConfig, check_inada

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_param_args(ap):
    g = ap.add_argument_group("parameters")
    g.add_argument("--params", metavar="PATH", help="key=value parameter file")
    g.add_argument("--case", type=int, choices=(1, 2), help="start from a benchmark case")
    for name in PARAM_NAMES:
        g.add_argument(f"--{name}", type=float, metavar="X", help=f"override {name}")


def _add_grid_args(ap):
    g = ap.add_argument_group("capital grid")
    g.add_argument("--k", metavar="LIST", help="comma separated capital levels")
    g.add_argument("--kmin", type=float, default=1e-3)
    g.add_argument("--kmax", type=float, default=1e3)
    g.add_argument("--points", type=int, default=13)
    g.add_argument("--linear", action="store_true", help="linear instead of log spacing")


def _add_out_arg(ap):
    ap.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")


def _raw_params(args):
    values = {}
    if args.case is not None:
        values.update(report.CASES[args.case].as_dict())
    if args.params:
        values.update(report.read_params(args.params))
    for name in PARAM_NAMES:
        v = getattr(args, name)
        if v is not None:
            values[name] = v
    return report.complete_params(values)


def _params(args):
    return ValidatedParams.from_raw(_raw_params(args))


def _capital(args):
    if args.k:
        try:
            ks = [float(s) for s in args.k.split(",") if s.strip()]
        except ValueError:
            raise ParameterError(f"--k: not a list of numbers: {args.k!r}") from None
        if not ks:
            raise ParameterError("--k: empty list")
        return ks
    spacing = Spacing.LINEAR if args.linear else Spacing.LOG
    try:
        return Grid(args.kmin, args.kmax, args.points, spacing)
    except ValueError as exc:
        raise ParameterError(f"grid: {exc}") from None


@contextlib.contextmanager
def _sink(path):
    if path:
        with open(path, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def cmd_validate(args):
    rep = validate(_raw_params(args))
    with _sink(args.out) as fh:
        report.write_items(rep.items(), fh)
    return EXIT_OK if rep.overall else EXIT_INVALID


def cmd_eval(args):
    p = _params(args)
    grid = _capital(args)
    with _sink(args.out) as fh:
        report.emit_eval_csv(p, grid, fh)
    return EXIT_OK


def cmd_sigma(args):
    p = _params(args)
    grid = _capital(args)
    if isinstance(grid, Grid):
        series = sigma_scan(p, grid)
        k, sigma = series.grid, series.sigma
    else:
        k = sorted(set(grid))
        sigma = np.atleast_1d(sigma_closed(p, k))
    print(f"# regime={classify_regime(p).value}", file=sys.stderr)
    with _sink(args.out) as fh:
        report.write_csv(fh, ("k", "sigma"), [k, sigma])
    return EXIT_OK


def cmd_inada(args):
    if args.diagnostic:
        p = _raw_params(args)
    else:
        p = _params(args)
    try:
        cfg = ProbeConfig(
            k_min=args.kmin,
            k_max=args.kmax,
            points_per_decade=args.points_per_decade,
            divergence_threshold=args.divergence_threshold,
            vanishing_threshold=args.vanishing_threshold,
            slope_tolerance=args.slope_tolerance,
        )
    except ValueError as exc:
        raise ParameterError(f"probe: {exc}") from None
    rep = check_inada(p, cfg, diagnostic=args.diagnostic)
    items = []
    for name, c in rep.checks():
        items += [(name, c.verdict.value), (f"{name}.k", c.k), (f"{name}.value", c.value)]
    items += [
        ("share_limit_zero", rep.share_limit_zero),
        ("share_limit_infinity", rep.share_limit_infinity),
        ("slope_estimate_zero", rep.slope_estimate_zero),
        ("slope_estimate_infinity", rep.slope_estimate_infinity),
        ("grids_used", rep.grids_used),
        ("summary", "PASS" if rep.all_pass else "FAIL"),
    ]
    with _sink(args.out) as fh:
        report.write_items(items, fh)
    return EXIT_OK if rep.all_pass else EXIT_INVALID


def cmd_asym(args):
    p = _params(args)
    summary = asymptotics.summarize(p)
    with _sink(args.out) as fh:
        report.write_items(summary.items(), fh)
        fh.write("\n")
        rows = asymptotics.gap_table(p)
        report.write_csv(fh, ("k", "gap_zero", "gap_infinity"), list(zip(*rows)))
    return EXIT_OK


def cmd_figures(args):
    for path in report.emit_figures(args.case, args.outdir):
        print(path)
    return EXIT_OK


def cmd_fit(args):
    data = calibrate.read_observations(args.data)
    init = _raw_params(args)
    opts = calibrate.FitOptions(max_iter=args.max_iter, repair_init=args.repair_init)
    try:
        result = calibrate.fit(data, init, opts)
    except calibrate.CalibrationError as exc:
        raise ParameterError(str(exc)) from None
    with _sink(args.out) as fh:
        report.write_items(result.items(), fh)
    return EXIT_OK


def cmd_synth(args):
    p = _params(args)
    grid = _capital(args)
    if not isinstance(grid, Grid):
        raise ParameterError("synth needs --kmin/--kmax/--points")
    obs = calibrate.generate_synthetic(p, grid, args.noise, args.seed)
    with _sink(args.out) as fh:
        calibrate.write_observations(obs, fh)
    return EXIT_OK


def build_parser():
    ap = _Parser(prog="vesprod", description="Variable-elasticity production function toolkit")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("validate", help="check feasibility conditions")
    _add_param_args(sp)
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("eval", help="f, f', f'', sigma and share on a grid (CSV)")
    _add_param_args(sp)
    _add_grid_args(sp)
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("sigma", help="elasticity of substitution on a grid (CSV)")
    _add_param_args(sp)
    _add_grid_args(sp)
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_sigma)

    sp = sub.add_parser("inada", help="numerical Inada checks")
    _add_param_args(sp)
    d = ProbeConfig()
    sp.add_argument("--kmin", type=float, default=d.k_min)
    sp.add_argument("--kmax", type=float, default=d.k_max)
    sp.add_argument("--points-per-decade", type=int, default=d.points_per_decade)
    sp.add_argument("--divergence-threshold", type=float, default=d.divergence_threshold)
    sp.add_argument("--vanishing-threshold", type=float, default=d.vanishing_threshold)
    sp.add_argument("--slope-tolerance", type=float, default=d.slope_tolerance)
    sp.add_argument("--diagnostic", action="store_true", help="accept infeasible parameters")
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_inada)

    sp = sub.add_parser("asym", help="asymptotic Cobb-Douglas summary and gap table")
    _add_param_args(sp)
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_asym)

    sp = sub.add_parser("figures", help="benchmark case tables and charts")
    sp.add_argument("--case", type=int, choices=(1, 2), required=True)
    sp.add_argument("--outdir", required=True)
    sp.set_defaults(func=cmd_figures)

    sp = sub.add_parser("fit", help="calibrate parameters to k,y data")
    _add_param_args(sp)
    sp.add_argument("--data", required=True, metavar="CSV")
    sp.add_argument("--init", dest="params", metavar="PATH", help="initial guess file")
    sp.add_argument("--max-iter", type=int, default=200)
    sp.add_argument("--repair-init", action="store_true",
                    help="move an infeasible initial guess into the feasible set")
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("synth", help="synthetic k,y observations")
    _add_param_args(sp)
    _add_grid_args(sp)
    sp.add_argument("--noise", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    _add_out_arg(sp)
    sp.set_defaults(func=cmd_synth)
    return ap


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except ValidationError as exc:
        print(f"vesprod: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericFailure as exc:
        print(f"vesprod: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ParameterError, DomainError, OSError, ValueError) as exc:
        print(f"vesprod: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"vesprod: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run())
