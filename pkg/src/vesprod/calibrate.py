"""
Least-squares calibration of the six parameters to (k, y) observations.

f is invariant under (A, alpha, beta) -> (A c**-omega, c alpha, c beta), so
fitting happens in the chart alpha + beta = 1.  Inside that chart the
remaining five parameters are mapped to unconstrained coordinates:

    A                     = exp(a)
    alpha                 = logistic(v),  beta = 1 - alpha
    (theta, wp, 1-theta-wp) = softmax(0, z1, z2)[1], [2], [0]   (wp = omega psi)
    psi                   = logistic(w) if psi > 0 else -exp(w)
    omega                 = wp / psi

so every iterate is feasible.  The sign of psi is fixed by the initial guess.
Residuals are taken in logs.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit, logit

from .core import (
    ParameterError,
    RawParams,
    ValidatedParams,
    ValidationError,
    log_f,
    validate,
)


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class Observation:
    k: float
    y: float

    def __post_init__(self):
        for name in ("k", "y"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"observation {name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class FitOptions:
    max_iter: int = 200
    ftol: float = 1e-12
    xtol: float = 1e-10
    gtol: float = 1e-14
    damping: float = 1e-3
    fd_step: float = 1e-6
    # Longest step in the unconstrained coordinates; longer ones raise damping.
    max_step: float = 1.0
    # Pull an infeasible initial guess into the interior instead of refusing it.
    repair_init: bool = False
    repair_margin: float = 0.01


@dataclass(frozen=True)
class FitResult:
    params: ValidatedParams
    rmse: float
    iterations: int
    converged: bool
    objective_history: tuple = ()
    stop_reason: str = ""

    def items(self):
        rows = list(self.params.as_dict().items())
        rows += [
            ("rmse", self.rmse),
            ("iterations", self.iterations),
            ("converged", self.converged),
            ("stop_reason", self.stop_reason),
        ]
        return rows


def normalize(p):
    """Rescale so that alpha + beta = 1; f is unchanged pointwise."""
    c = 1.0 / (p.alpha + p.beta)
    if c == 1.0:
        return p
    return ValidatedParams(
        A=p.A * c ** (-p.omega),
        alpha=p.alpha * c,
        beta=p.beta * c,
        theta=p.theta,
        psi=p.psi,
        omega=p.omega,
    )


def _encode(p):
    wp = p.omega * p.psi
    rest = 1.0 - p.theta - wp
    w = logit(p.psi) if p.psi > 0 else math.log(-p.psi)
    return np.array(
        [
            math.log(p.A),
            logit(p.alpha),
            math.log(p.theta / rest),
            math.log(wp / rest),
            w,
        ]
    )


def _decode(x, psi_positive):
    a, v, z1, z2, w = x
    alpha = float(expit(v))
    m = max(0.0, z1, z2)
    e0, e1, e2 = math.exp(-m), math.exp(z1 - m), math.exp(z2 - m)
    tot = e0 + e1 + e2
    theta, wp = e1 / tot, e2 / tot
    psi = float(expit(w)) if psi_positive else -math.exp(w)
    return RawParams(
        A=math.exp(a), alpha=alpha, beta=1.0 - alpha, theta=theta, psi=psi, omega=wp / psi
    )


def _repair(raw, margin):
    """Nearest-in-spirit interior point: clip the simplex (theta, wp, rest) and psi."""
    A = raw.A if raw.A > 0 else 1.0
    alpha = raw.alpha if raw.alpha > 0 else margin
    beta = raw.beta if raw.beta > 0 else margin
    psi = raw.psi
    if psi == 0:
        raise CalibrationError("cannot repair psi = 0: its sign is undetermined")
    psi = min(psi, 1.0 - margin)
    wp = raw.omega * raw.psi
    parts = np.array([raw.theta, wp, 1.0 - raw.theta - wp])
    parts = np.maximum(parts, margin)
    parts /= parts.sum()
    theta, wp = parts[0], parts[1]
    return ValidatedParams(A=A, alpha=alpha, beta=beta, theta=theta, psi=psi, omega=wp / psi)


def _prepare_init(init, opts):
    if isinstance(init, ValidatedParams):
        p = init
    else:
        raw = init if isinstance(init, RawParams) else RawParams(**init)
        report = validate(raw)
        if report.overall:
            p = ValidatedParams.from_raw(raw)
        elif opts.repair_init:
            p = _repair(raw, opts.repair_margin)
        else:
            raise ValidationError(report)
    return normalize(p)


def _check_data(data):
    obs = [d if isinstance(d, Observation) else Observation(*d) for d in data]
    if len(obs) < 6:
        raise CalibrationError(f"need at least 6 observations, got {len(obs)}")
    k = np.array([o.k for o in obs])
    if len(np.unique(k)) < 6:
        raise CalibrationError("need at least 6 distinct capital levels")
    return k, np.log(np.array([o.y for o in obs]))


def fit(data, init, opts=None):
    """Damped Gauss-Newton (Levenberg) fit of ln y = ln f(k).

    A trial step is accepted only if it lowers the sum of squared log
    residuals; otherwise the damping grows tenfold and the step is retried.
    The Jacobian is a central finite difference of ``log_f`` in the
    unconstrained coordinates.
    """
    opts = opts or FitOptions()
    k, lny = _check_data(data)
    p0 = _prepare_init(init, opts)
    sign = p0.psi > 0

    def residual(x):
        raw = _decode(x, sign)
        if not validate(raw).overall:
            # logistic or softmax rounded onto the boundary
            return np.full_like(lny, np.inf)
        return lny - np.asarray(log_f(raw, k))

    def jacobian(x):
        J = np.empty((len(k), len(x)))
        for j in range(len(x)):
            h = opts.fd_step * max(1.0, abs(x[j]))
            xp, xm = x.copy(), x.copy()
            xp[j] += h
            xm[j] -= h
            J[:, j] = (residual(xp) - residual(xm)) / (2 * h)
        return J

    x = _encode(p0)
    r = residual(x)
    obj = float(r @ r)
    history = [obj]
    lam = opts.damping
    converged = False
    reason = "iteration cap"
    it = 0
    while it < opts.max_iter:
        it += 1
        J = jacobian(x)
        grad = J.T @ r
        if float(np.linalg.norm(grad)) <= opts.gtol or obj == 0.0:
            converged, reason = True, "gradient"
            break
        JTJ = J.T @ J
        accepted = False
        while lam < 1e16:
            try:
                # identity damping: Marquardt's diag(J'J) scaling lets saturated
                # logistic coordinates run off towards the boundary
                step = np.linalg.solve(JTJ + lam * np.eye(len(x)), -grad)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            if float(np.linalg.norm(step)) < opts.xtol:
                converged, reason = True, "step"
                break
            if float(np.linalg.norm(step)) > opts.max_step:
                lam *= 10
                continue
            x_new = x + step
            with np.errstate(all="ignore"):
                r_new = residual(x_new)
            obj_new = float(r_new @ r_new)
            if math.isfinite(obj_new) and obj_new < obj:
                rel = (obj - obj_new) / obj
                x, r, obj = x_new, r_new, obj_new
                history.append(obj)
                lam = max(lam / 10, 1e-12)
                accepted = True
                if rel < opts.ftol:
                    converged, reason = True, "objective"
                break
            lam *= 10
        if converged:
            break
        if not accepted:
            # damping saturated without a decrease
            reason = "damping saturated"
            break

    best = ValidatedParams.from_raw(_decode(x, sign))
    return FitResult(
        params=best,
        rmse=math.sqrt(obj / len(k)),
        iterations=it,
        converged=converged,
        objective_history=tuple(history),
        stop_reason=reason,
    )


def generate_synthetic(p, grid, noise_sd=0.0, seed=0):
    """Observations y = exp(ln f(k) + eps), eps ~ N(0, noise_sd**2)."""
    if noise_sd < 0:
        raise ValueError("noise_sd must be >= 0")
    k = grid.values()
    lf = np.atleast_1d(log_f(p, k))
    if noise_sd > 0:
        lf = lf + np.random.default_rng(seed).normal(0.0, noise_sd, size=len(k))
    return [Observation(float(ki), float(math.exp(li))) for ki, li in zip(k, lf)]


def read_observations(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["k", "y"]:
            raise ParameterError(f"{path}: header must be 'k,y'")
        out = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ParameterError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                out.append(Observation(float(row[0]), float(row[1])))
            except ValueError as exc:
                raise ParameterError(f"{path}:{lineno}: {exc}") from None
    return out


def write_observations(obs, fh):
    from .report import fmt

    fh.write("k,y\n")
    for o in obs:
        fh.write(f"{fmt(o.k)},{fmt(o.y)}\n")
