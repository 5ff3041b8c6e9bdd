"""
Cobb-Douglas behaviour of f at the two ends of the capital axis.

Near zero f behaves like ``A_z k**alpha_z`` and near infinity like
``B_z k**beta_z``; which of theta and theta + omega psi is which depends only
on the sign of psi.  In the published notation the limit functions are g1/g2
(k -> 0) and f1/f2 (k -> infinity); here they are ``limit_function_at_zero``
and ``limit_function_at_infinity`` so they do not clash with the curvature
polynomial ``core.eval_g``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import _as_k, _log_ratio, _out, capital_share


class End(enum.Enum):
    ZERO = "zero"
    INFINITY = "infinity"


@dataclass(frozen=True)
class AsymptoticSummary:
    alpha_z: float
    beta_z: float
    A_z: float
    B_z: float
    psi_positive: bool

    def items(self):
        return [
            ("alpha_z", self.alpha_z),
            ("beta_z", self.beta_z),
            ("A_z", self.A_z),
            ("B_z", self.B_z),
            ("psi_positive", self.psi_positive),
        ]


def limit_exponents(p):
    """(exponent as k -> 0, exponent as k -> infinity)."""
    lifted = p.theta + p.omega * p.psi
    if p.psi > 0:
        return p.theta, lifted
    return lifted, p.theta


def limit_coefficients(p):
    """(coefficient as k -> 0, coefficient as k -> infinity)."""
    on_beta = p.A * p.beta**p.omega
    on_alpha = p.A * p.alpha**p.omega
    if p.psi > 0:
        return on_beta, on_alpha
    return on_alpha, on_beta


def summarize(p):
    alpha_z, beta_z = limit_exponents(p)
    A_z, B_z = limit_coefficients(p)
    return AsymptoticSummary(alpha_z, beta_z, A_z, B_z, p.psi > 0)


def limit_function_at_zero(p, k):
    k = _as_k(k)
    alpha_z, _ = limit_exponents(p)
    A_z, _ = limit_coefficients(p)
    return _out(A_z * k**alpha_z)


def limit_function_at_infinity(p, k):
    k = _as_k(k)
    _, beta_z = limit_exponents(p)
    _, B_z = limit_coefficients(p)
    return _out(B_z * k**beta_z)


def log_ratio_to_limit(p, k, end):
    """ln f(k) - ln(limit function at ``end``), evaluated without cancellation.

    The limit keeps only one term of alpha k^psi + beta, so the log ratio is
    omega * softplus(+-(psi ln k + ln(alpha / beta))).
    """
    k = _as_k(k)
    z = _log_ratio(p, np.log(k))
    keeps_beta = (p.psi > 0) == (End(end) is End.ZERO)
    if not keeps_beta:
        z = -z
    return _out(p.omega * np.logaddexp(0.0, z))


def relative_gap(p, k, end):
    """|f(k) / limit(k) - 1| for the limit function at ``end``."""
    return _out(np.abs(np.expm1(np.asarray(log_ratio_to_limit(p, k, end)))))


def loglog_slope(p, k):
    """d ln f / d ln k, which equals the capital share."""
    return capital_share(p, k)


def gap_table(p, exponents=range(-6, 7)):
    """Rows (k, gap at zero, gap at infinity) for k = 10**e."""
    rows = []
    for e in exponents:
        k = math.pow(10.0, e)
        rows.append((k, relative_gap(p, k, End.ZERO), relative_gap(p, k, End.INFINITY)))
    return rows
