"""
Numerical checks of the Inada conditions and finite-difference oracles.

A limit such as ``f'(k) -> +inf as k -> 0`` cannot be observed directly, so
each limit is judged on a logarithmic probe grid.  The marginal product of a
function that behaves like ``C k**e`` near an end point moves by only
``e * ln(10)`` per decade, so a fixed threshold alone wrongly fails slow power
laws (exponents close to 0 or 1).  A limit verdict therefore passes when the
tail is strictly monotone in the right direction and either the threshold is
crossed or the local log-log slope is bounded away from zero by
``slope_tolerance``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    NumericFailure,
    RawParams,
    ValidatedParams,
    capital_share,
    eval_f,
    eval_f_double_prime,
    eval_f_prime,
)

EPS = np.finfo(float).eps


class Verdict(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class Check:
    """A verdict with its worst-case witness: capital level and measured value."""

    verdict: Verdict
    k: float
    value: float
    detail: str = ""

    @property
    def passed(self):
        return self.verdict is Verdict.PASS


@dataclass(frozen=True)
class ProbeConfig:
    k_min: float = 1e-8
    k_max: float = 1e8
    points_per_decade: int = 4
    divergence_threshold: float = 1e3
    vanishing_threshold: float = 1e-2
    slope_tolerance: float = 1e-3

    def __post_init__(self):
        if not 0 < self.k_min < 1 < self.k_max:
            raise ValueError("probe bounds must satisfy 0 < k_min < 1 < k_max")
        if int(self.points_per_decade) != self.points_per_decade or self.points_per_decade < 1:
            raise ValueError("points_per_decade must be a positive integer")
        for name in ("divergence_threshold", "vanishing_threshold", "slope_tolerance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")

    def grid(self):
        decades = math.log10(self.k_max) - math.log10(self.k_min)
        n = max(int(round(decades * self.points_per_decade)) + 1, 3)
        k = np.geomspace(self.k_min, self.k_max, n)
        k[0], k[-1] = self.k_min, self.k_max
        return k

    def describe(self):
        return f"log[{self.k_min:g},{self.k_max:g}] {len(self.grid())} points"


CONDITIONS = (
    "nonneg_and_zero_at_origin",
    "f_increasing",
    "f_prime_diverges_at_zero",
    "f_prime_vanishes_at_infinity",
    "f_concave",
    "f_diverges_at_infinity",
)


@dataclass(frozen=True)
class InadaReport:
    nonneg_and_zero_at_origin: Check
    f_increasing: Check
    f_prime_diverges_at_zero: Check
    f_prime_vanishes_at_infinity: Check
    f_concave: Check
    f_diverges_at_infinity: Check
    share_limit_zero: float
    share_limit_infinity: float
    slope_estimate_zero: float
    slope_estimate_infinity: float
    grids_used: str

    @property
    def all_pass(self):
        return all(getattr(self, name).passed for name in CONDITIONS)

    def checks(self):
        return [(name, getattr(self, name)) for name in CONDITIONS]

    def failures(self):
        return [name for name, c in self.checks() if not c.passed]


def _slopes(k, y):
    return np.diff(np.log(y)) / np.diff(np.log(k))


def _tail_verdict(k, y, *, towards, threshold, above, slope_sign, tol):
    """Judge a limit from the three grid points nearest one end.

    ``towards`` is "zero" or "infinity"; ``above`` says whether the threshold
    must be exceeded (divergence) or undercut (vanishing); ``slope_sign`` is the
    required sign of d ln y / d ln k on the tail.
    """
    if towards == "zero":
        kt, yt, end = k[:3], y[:3], 0
    else:
        kt, yt, end = k[-3:], y[-3:], -1
    if np.any(yt <= 0):
        return Check(Verdict.FAIL, float(kt[end]), float(yt[end]), "non-positive on tail"), math.nan
    s = _slopes(kt, yt)
    worst = float(np.min(s * slope_sign) * slope_sign)
    monotone = np.all(s * slope_sign > 0)
    crossed = yt[end] > threshold if above else yt[end] < threshold
    steep = np.all(s * slope_sign >= tol)
    ok = bool(monotone and (crossed or steep))
    detail = f"slope={worst!r}" + (" threshold crossed" if crossed else "")
    return Check(Verdict.PASS if ok else Verdict.FAIL, float(kt[end]), float(yt[end]), detail), worst


def _sign_check(k, y, positive):
    idx = int(np.argmin(y)) if positive else int(np.argmax(y))
    ok = bool(np.all(y > 0)) if positive else bool(np.all(y < 0))
    return Check(Verdict.PASS if ok else Verdict.FAIL, float(k[idx]), float(y[idx]))


def check_inada(p, cfg=None, *, diagnostic=False):
    """Probe the six Inada requirements on a log grid.

    ``p`` must be :class:`ValidatedParams` unless ``diagnostic`` is set, in which
    case any :class:`RawParams` is accepted so that failures outside the
    feasible set can be inspected.
    """
    if cfg is None:
        cfg = ProbeConfig()
    if not diagnostic and not isinstance(p, ValidatedParams):
        raise TypeError("check_inada needs ValidatedParams; pass diagnostic=True for raw input")
    if not isinstance(p, RawParams):
        raise TypeError(f"expected parameters, got {type(p).__name__}")

    k = cfg.grid()
    with np.errstate(all="ignore"):
        f = np.asarray(eval_f(p, k))
        fp = np.asarray(eval_f_prime(p, k))
        fpp = np.asarray(eval_f_double_prime(p, k))
    for name, arr in (("f", f), ("f'", fp), ("f''", fpp)):
        bad = ~np.isfinite(arr)
        if np.any(bad):
            raise NumericFailure(f"{name} is not finite on the probe grid", float(k[bad][0]))

    try:
        f0 = float(eval_f(p, 0.0))
    except NumericFailure:
        f0 = math.inf
    nonneg = _sign_check(k, f, positive=True)
    zero_ok = f0 == 0.0 and bool(np.all(f >= 0))
    origin = Check(
        Verdict.PASS if zero_ok else Verdict.FAIL,
        nonneg.k if f0 == 0.0 else 0.0,
        nonneg.value if f0 == 0.0 else f0,
        f"f(0)={f0!r}",
    )

    diverge0, _ = _tail_verdict(
        k, fp, towards="zero", threshold=cfg.divergence_threshold,
        above=True, slope_sign=-1, tol=cfg.slope_tolerance,
    )
    vanish, _ = _tail_verdict(
        k, fp, towards="infinity", threshold=cfg.vanishing_threshold,
        above=False, slope_sign=-1, tol=cfg.slope_tolerance,
    )
    grow, _ = _tail_verdict(
        k, f, towards="infinity", threshold=cfg.divergence_threshold,
        above=True, slope_sign=1, tol=cfg.slope_tolerance,
    )

    share = np.asarray(capital_share(p, np.array([cfg.k_min, cfg.k_max])))
    slopes = _slopes(k, f)
    return InadaReport(
        nonneg_and_zero_at_origin=origin,
        f_increasing=_sign_check(k, fp, positive=True),
        f_prime_diverges_at_zero=diverge0,
        f_prime_vanishes_at_infinity=vanish,
        f_concave=_sign_check(k, fpp, positive=False),
        f_diverges_at_infinity=grow,
        share_limit_zero=float(share[0]),
        share_limit_infinity=float(share[1]),
        slope_estimate_zero=float(slopes[0]),
        slope_estimate_infinity=float(slopes[-1]),
        grids_used=cfg.describe(),
    )


def _representable_step(k, h):
    tmp = k + h
    return tmp - k


def _sample(fn, x):
    y = float(fn(x))
    if not math.isfinite(y):
        raise NumericFailure("non-finite sample in finite difference", x)
    return y


def finite_diff_first(fn, k):
    """Central difference with step k * eps**(1/3)."""
    h = _representable_step(k, k * EPS ** (1 / 3))
    return (_sample(fn, k + h) - _sample(fn, k - h)) / (2 * h)


def finite_diff_second(fn, k):
    """Second central difference with step k * eps**(1/4)."""
    h = _representable_step(k, k * EPS ** (1 / 4))
    return (_sample(fn, k + h) - 2 * _sample(fn, k) + _sample(fn, k - h)) / (h * h)
