"""
Parameters, feasibility checks and evaluation of the intensive-form
production function

    f(k) = A * k**theta * (alpha * k**psi + beta)**omega

together with its first two derivatives and the capital share k f'(k) / f(k).

All evaluation functions accept a scalar or an array of capital levels and
return a float or an ``ndarray`` of the same shape.  Heavy lifting is done on
the normalised weight

    u(k) = alpha k**psi / (alpha k**psi + beta),

a logistic transform of ``psi ln k + ln(alpha / beta)``, which stays in [0, 1]
for every k and keeps share, curvature and elasticity free of overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np
from scipy.special import expit

__all__ = [
    "PARAM_NAMES",
    "ParameterError",
    "ValidationError",
    "DomainError",
    "NumericFailure",
    "RawParams",
    "ValidationReport",
    "ValidatedParams",
    "CASE_1",
    "CASE_2",
    "validate",
    "eval_f",
    "eval_f_prime",
    "eval_f_double_prime",
    "eval_g",
    "capital_share",
    "log_f",
    "weight",
    "random_params",
]

PARAM_NAMES = ("A", "alpha", "beta", "theta", "psi", "omega")


class ParameterError(ValueError):
    """Malformed parameter input (non-finite value, unknown or missing key)."""


class ValidationError(ValueError):
    """Finite parameters that fall outside the feasible set."""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failures())
        super().__init__(f"parameters outside the feasible set: {failed}")


class DomainError(ValueError):
    """Capital level outside the domain of the requested quantity."""


class NumericFailure(ArithmeticError):
    """Evaluation left the floating point range or hit a vanishing denominator."""

    def __init__(self, message, k=None):
        self.k = k
        super().__init__(message if k is None else f"{message} (k={k!r})")


@dataclass(frozen=True)
class RawParams:
    A: float
    alpha: float
    beta: float
    theta: float
    psi: float
    omega: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError(f"{f.name} is not a real number: {value!r}") from None
            if not math.isfinite(value):
                raise ParameterError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, value)

    def as_dict(self):
        return {name: getattr(self, name) for name in PARAM_NAMES}

    def replace(self, **changes):
        values = self.as_dict()
        values.update(changes)
        return type(self)(**values)


@dataclass(frozen=True)
class ValidationReport:
    positivity_A: bool
    positivity_alpha: bool
    positivity_beta: bool
    theta_in_unit_interval: bool
    theta_plus_omega_psi_in_unit_interval: bool
    psi_below_one: bool
    omega_psi_in_unit_interval: bool

    CONDITIONS = (
        "positivity_A",
        "positivity_alpha",
        "positivity_beta",
        "theta_in_unit_interval",
        "theta_plus_omega_psi_in_unit_interval",
        "psi_below_one",
        "omega_psi_in_unit_interval",
    )

    @property
    def overall(self):
        return all(getattr(self, name) for name in self.CONDITIONS)

    def failures(self):
        return [name for name in self.CONDITIONS if not getattr(self, name)]

    def items(self):
        """(condition, flag) pairs in canonical order, ``overall`` last."""
        return [(name, getattr(self, name)) for name in self.CONDITIONS] + [
            ("overall", self.overall)
        ]


def validate(raw):
    """Check every strict inequality of the feasible set and report each one.

    All conditions are evaluated; a failure of one does not hide the others.
    Non-finite input never reaches this point since ``RawParams`` rejects it
    with a ``ParameterError``.
    """
    wp = raw.omega * raw.psi
    return ValidationReport(
        positivity_A=raw.A > 0,
        positivity_alpha=raw.alpha > 0,
        positivity_beta=raw.beta > 0,
        theta_in_unit_interval=0 < raw.theta < 1,
        theta_plus_omega_psi_in_unit_interval=0 < raw.theta + wp < 1,
        psi_below_one=raw.psi < 1,
        # same-sign requirement on (omega, psi) is implied by wp > 0
        omega_psi_in_unit_interval=0 < wp < 1,
    )


@dataclass(frozen=True)
class ValidatedParams(RawParams):
    """Parameters certified to satisfy every feasibility condition.

    Construction runs :func:`validate` and raises :class:`ValidationError`
    if any condition fails, so an instance is proof of membership.
    """

    def __post_init__(self):
        super().__post_init__()
        report = validate(self)
        if not report.overall:
            raise ValidationError(report)

    @classmethod
    def from_raw(cls, raw):
        return cls(**raw.as_dict())

    def to_raw(self):
        return RawParams(**self.as_dict())


CASE_1 = ValidatedParams(A=1.05, alpha=0.2, beta=0.8, theta=0.8, psi=0.9, omega=0.2)
CASE_2 = ValidatedParams(A=1.05, alpha=0.2, beta=0.8, theta=0.8, psi=-0.9, omega=-0.2)


def _as_k(k, strict=True):
    arr = np.asarray(k, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("capital level is NaN")
    bad = arr <= 0 if strict else arr < 0
    if np.any(bad):
        first = float(arr[bad].flat[0]) if arr.ndim else float(arr)
        rel = "> 0" if strict else ">= 0"
        raise DomainError(f"capital level must be {rel}, got {first!r}")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _log_ratio(p, lnk):
    """psi ln k + ln(alpha / beta), the logit of the weight u(k)."""
    with np.errstate(divide="ignore"):
        return p.psi * lnk + (np.log(p.alpha) - np.log(p.beta))


def weight(p, k):
    """Normalised weight u(k) = alpha k^psi / (alpha k^psi + beta) in [0, 1]."""
    k = _as_k(k)
    return _out(expit(_log_ratio(p, np.log(k))))


def _zero_exponent(p):
    if p.alpha == 0 or p.psi >= 0:
        return p.theta
    return p.theta + p.omega * p.psi


def log_f(p, k):
    """ln f(k) through a two-term log-sum-exp; finite for any k > 0."""
    k = _as_k(k)
    lnk = np.log(k)
    with np.errstate(divide="ignore"):
        inner = np.logaddexp(np.log(p.alpha) + p.psi * lnk, np.log(p.beta))
    return _out(math.log(p.A) + p.theta * lnk + p.omega * inner)


_LOG_MAX = math.log(np.finfo(float).max)


def eval_f(p, k):
    """Output per worker, with f(0) defined as the limit from the right.

    The direct product is used when all of its factors are representable; the
    remaining points go through :func:`log_f`.  A result beyond the float range
    raises :class:`NumericFailure` instead of returning ``inf``.
    """
    k = _as_k(k, strict=False)
    out = np.zeros_like(k)
    pos = k > 0
    kp = k[pos]
    with np.errstate(all="ignore"):
        direct = p.A * kp**p.theta * (p.alpha * kp**p.psi + p.beta) ** p.omega
    ok = np.isfinite(direct) & (direct > 0)
    if not np.all(ok):
        logs = np.asarray(log_f(p, kp[~ok]))
        if np.any(logs > _LOG_MAX):
            raise NumericFailure("f overflows the float range", float(kp[~ok][logs > _LOG_MAX][0]))
        direct[~ok] = np.exp(logs)
    out[pos] = direct
    if np.any(~pos):
        e0 = _zero_exponent(p)
        if e0 > 0:
            out[~pos] = 0.0
        elif e0 == 0:
            out[~pos] = p.A * (p.beta**p.omega if p.psi > 0 or p.alpha == 0 else p.alpha**p.omega)
        else:
            raise NumericFailure("f diverges at k = 0", 0.0)
    return _out(out)


def capital_share(p, k):
    """k f'(k) / f(k) = theta + omega psi u(k); also d ln f / d ln k."""
    u = np.asarray(weight(p, k))
    return _out(p.theta + p.omega * p.psi * u)


def eval_f_prime(p, k):
    k = _as_k(k)
    return _out(np.asarray(eval_f(p, k)) * np.asarray(capital_share(p, k)) / k)


def _g_normalised(p, u):
    # g(k) / (alpha k^psi + beta)^2 written in u and 1 - u
    wp = p.omega * p.psi
    v = 1.0 - u
    return (
        (p.theta + wp) * (1 - p.theta - wp) * u * u
        + (wp * (1 - p.psi) + 2 * p.theta * (1 - p.theta - wp)) * u * v
        + p.theta * (1 - p.theta) * v * v
    )


def eval_f_double_prime(p, k):
    """f''(k) = -f g / (k^2 (alpha k^psi + beta)^2), negative on the feasible set."""
    k = _as_k(k)
    u = np.asarray(weight(p, k))
    return _out(-np.asarray(eval_f(p, k)) * _g_normalised(p, u) / (k * k))


def eval_g(p, k):
    """The quadratic in k^psi that sets the sign of f''.

    Evaluated literally; for extreme k the ``k**(2 psi)`` term can overflow,
    use :func:`eval_f_double_prime` there.
    """
    k = _as_k(k)
    x = k**p.psi
    wp = p.omega * p.psi
    a2 = p.alpha**2 * (p.theta + wp) * (1 - p.theta - wp)
    ab = p.alpha * p.beta * (wp * (1 - p.psi) + 2 * p.theta * (1 - p.theta - wp))
    b2 = p.beta**2 * p.theta * (1 - p.theta)
    return _out(a2 * x * x + ab * x + b2)


def random_params(rng, scale_range=(0.1, 10.0)):
    """Draw a feasible parameter set by rejection sampling.

    theta ~ U(0.01, 0.99), psi ~ U(-2, 1) with |psi| >= 0.05,
    omega * psi ~ U(0.01, 0.99);
    draws with theta + omega psi outside (0.01, 0.99) are rejected.  A, alpha
    and beta are log-uniform on ``scale_range``.
    """
    lo, hi = math.log(scale_range[0]), math.log(scale_range[1])
    while True:
        theta = rng.uniform(0.01, 0.99)
        psi = rng.uniform(-2.0, 1.0)
        if abs(psi) < 0.05:
            # omega = wp / psi grows without bound; beta**omega underflows
            continue
        wp = rng.uniform(0.01, 0.99)
        if not 0.01 < theta + wp < 0.99:
            continue
        A, alpha, beta = np.exp(rng.uniform(lo, hi, size=3))
        try:
            return ValidatedParams(
                A=A, alpha=alpha, beta=beta, theta=theta, psi=psi, omega=wp / psi
            )
        except ValidationError:
            # psi within rounding of 1
            continue
