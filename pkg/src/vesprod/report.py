"""Text output: number formatting, parameter files, CSV tables and figure sets."""

from __future__ import annotations

import math
import os

import numpy as np

from . import plotting
from .asymptotics import limit_function_at_infinity, limit_function_at_zero
from .core import (
    CASE_1,
    CASE_2,
    PARAM_NAMES,
    ParameterError,
    RawParams,
    capital_share,
    eval_f,
    eval_f_double_prime,
    eval_f_prime,
)
from .elasticity import sigma_closed
from .grid import Grid

EVAL_HEADER = ("k", "f", "f_prime", "f_double_prime", "sigma", "share")

CASES = {1: CASE_1, 2: CASE_2}

SIGMA_GRID = Grid(1e-6, 1e6, 601)
SMALL_GRID = Grid(1e-3, 10.0, 200)
LARGE_GRID = Grid(10.0, 1e4, 200)


def fmt(x):
    """Shortest round-trip decimal (at most 17 significant digits)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    r = repr(float(x))
    if r.endswith(".0"):
        r = r[:-2]
    return r


def read_params_text(text, source="<params>"):
    """Parse ``key=value`` lines; returns a dict of the keys present."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{source}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in PARAM_NAMES:
            raise ParameterError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ParameterError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            value = float(raw)
        except ValueError:
            raise ParameterError(f"{source}:{lineno}: {key} is not a number: {raw!r}") from None
        if not math.isfinite(value):
            raise ParameterError(f"{source}:{lineno}: {key} must be finite")
        values[key] = value
    return values


def read_params(path):
    with open(path) as fh:
        return read_params_text(fh.read(), source=str(path))


def complete_params(values, source="parameters"):
    missing = [name for name in PARAM_NAMES if name not in values]
    if missing:
        raise ParameterError(f"{source}: missing {', '.join(missing)}")
    return RawParams(**{name: values[name] for name in PARAM_NAMES})


def write_params(p, fh):
    for name in PARAM_NAMES:
        fh.write(f"{name}={fmt(getattr(p, name))}\n")


def write_items(items, fh):
    for key, value in items:
        fh.write(f"{key}={value if isinstance(value, str) else fmt(value)}\n")


def write_csv(fh, header, columns):
    fh.write(",".join(header) + "\n")
    for row in zip(*columns):
        fh.write(",".join(fmt(v) for v in row) + "\n")


def eval_columns(p, k):
    k = np.atleast_1d(np.asarray(k, dtype=float))
    return [
        k,
        np.atleast_1d(eval_f(p, k)),
        np.atleast_1d(eval_f_prime(p, k)),
        np.atleast_1d(eval_f_double_prime(p, k)),
        np.atleast_1d(sigma_closed(p, k)),
        np.atleast_1d(capital_share(p, k)),
    ]


def emit_eval_csv(p, grid, sink):
    """Write the evaluation table for ``grid`` (a Grid or a sequence of k)."""
    k = grid.values() if isinstance(grid, Grid) else grid
    write_csv(sink, EVAL_HEADER, eval_columns(p, k))


def figure_names(case_id):
    stems = (f"sigma_case{case_id}", f"compare_small_case{case_id}", f"compare_large_case{case_id}")
    return [s + ext for s in stems for ext in (".csv", ".svg")]


def emit_figures(case_id, outdir):
    """Write the three CSV tables and their SVG charts for a benchmark case."""
    if case_id not in CASES:
        raise ValueError(f"case must be 1 or 2, got {case_id!r}")
    p = CASES[case_id]
    os.makedirs(outdir, exist_ok=True)
    written = []

    def out(name):
        path = os.path.join(outdir, name)
        written.append(path)
        return path

    k = SIGMA_GRID.values()
    sigma = np.asarray(sigma_closed(p, k))
    with open(out(f"sigma_case{case_id}.csv"), "w", newline="") as fh:
        write_csv(fh, ("k", "sigma"), [k, sigma])
    plotting.line_chart(
        out(f"sigma_case{case_id}.svg"), k, [("sigma", sigma)],
        xlabel="k", ylabel="elasticity of substitution",
        title=f"Case {case_id}: sigma(k)", reference=1.0,
    )

    panels = (
        ("small", SMALL_GRID, "limit_zero", limit_function_at_zero, "k -> 0"),
        ("large", LARGE_GRID, "limit_inf", limit_function_at_infinity, "k -> infinity"),
    )
    for tag, grid, column, limit, where in panels:
        k = grid.values()
        f = np.asarray(eval_f(p, k))
        lim = np.asarray(limit(p, k))
        stem = f"compare_{tag}_case{case_id}"
        with open(out(stem + ".csv"), "w", newline="") as fh:
            write_csv(fh, ("k", "f", column), [k, f, lim])
        plotting.line_chart(
            out(stem + ".svg"), k, [("f", f), (f"Cobb-Douglas limit ({where})", lim)],
            xlabel="k", ylabel="output per worker",
            title=f"Case {case_id}: f vs limit, {where}", logy=True,
        )
    return written
