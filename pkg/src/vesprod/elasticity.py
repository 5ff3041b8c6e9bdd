"""
Elasticity of substitution sigma(k).

The production path rewrites the closed form in terms of the weight u(k):
dividing both brackets by (alpha k^psi + beta) gives

    sigma = N / (N - omega psi^2 u (1 - u)),   N = (theta + omega psi u)(1 - theta - omega psi u),

which never forms k**(2 psi).  ``sigma_from_derivatives`` is an independent
route through f, f' and f'' used to check it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    NumericFailure,
    _as_k,
    _out,
    eval_f,
    eval_f_double_prime,
    eval_f_prime,
    weight,
)


class Regime(enum.Enum):
    ABOVE_ONE = "ABOVE_ONE"
    BELOW_ONE = "BELOW_ONE"


@dataclass(frozen=True)
class SigmaSeries:
    grid: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        if len(self.grid) != len(self.sigma):
            raise ValueError("grid and sigma differ in length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")

    def __len__(self):
        return len(self.grid)


def sigma_closed(p, k):
    u = np.asarray(weight(p, k))
    wp = p.omega * p.psi
    s = p.theta + wp * u
    n = s * (1.0 - s)
    return _out(n / (n - p.omega * p.psi**2 * u * (1.0 - u)))


def sigma_literal(p, k):
    """The closed form exactly as written, in powers of k (overflows for extreme k)."""
    k = _as_k(k)
    x = p.alpha * k**p.psi
    wp = p.omega * p.psi
    a = (p.theta + wp) * x + p.beta * p.theta
    b = (1 - p.theta - wp) * x + p.beta * (1 - p.theta)
    return _out(a * b / (a * b - p.beta * p.omega * p.psi**2 * x))


def sigma_from_derivatives(p, k):
    """sigma = f'(f - k f') / (-k f f''), from the core evaluations."""
    k = _as_k(k)
    f = np.asarray(eval_f(p, k))
    fp = np.asarray(eval_f_prime(p, k))
    fpp = np.asarray(eval_f_double_prime(p, k))
    den = -k * f * fpp
    if np.any(den == 0) or not np.all(np.isfinite(den)):
        bad = np.atleast_1d(k)[np.atleast_1d((den == 0) | ~np.isfinite(den))][0]
        raise NumericFailure("vanishing denominator in derivative-based sigma", float(bad))
    return _out(fp * (f - k * fp) / den)


def sigma_scan(p, grid):
    k = grid.values()
    return SigmaSeries(grid=k, sigma=np.atleast_1d(sigma_closed(p, k)))


def classify_regime(p):
    # sigma - 1 has the sign of omega since the denominator is proportional to g > 0
    return Regime.ABOVE_ONE if p.omega > 0 else Regime.BELOW_ONE
