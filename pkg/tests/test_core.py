import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import draws
from vesprod.core import (
    CASE_1,
    CASE_2,
    DomainError,
    NumericFailure,
    ParameterError,
    RawParams,
    ValidatedParams,
    ValidationError,
    ValidationReport,
    capital_share,
    eval_f,
    eval_f_double_prime,
    eval_f_prime,
    eval_g,
    log_f,
    validate,
)
from vesprod.verify import finite_diff_first

BASE = CASE_1.as_dict()

# one violation per clause, each leaving every other clause satisfied
SINGLE_VIOLATIONS = [
    ("positivity_A", dict(A=-1.0)),
    ("positivity_alpha", dict(alpha=0.0)),
    ("positivity_beta", dict(beta=-0.8)),
    ("theta_in_unit_interval", dict(theta=0.0, psi=0.9, omega=0.5)),
    ("theta_plus_omega_psi_in_unit_interval", dict(theta=0.8, psi=0.9, omega=0.3)),
    ("psi_below_one", dict(theta=0.5, psi=1.2, omega=0.2)),
    ("omega_psi_in_unit_interval", dict(theta=0.8, psi=-0.9, omega=0.2)),
]


@pytest.fixture
def phi_sample():
    return draws(200, seed=1)


class TestValidate:
    def test_benchmarks_are_feasible(self):
        for p in (CASE_1, CASE_2):
            rep = validate(p)
            assert rep.overall
            assert rep.failures() == []

    @pytest.mark.parametrize("flag,change", SINGLE_VIOLATIONS, ids=[f for f, _ in SINGLE_VIOLATIONS])
    def test_single_violation(self, flag, change):
        raw = RawParams(**{**BASE, **change})
        rep = validate(raw)
        assert rep.failures() == [flag]
        assert not rep.overall
        with pytest.raises(ValidationError) as exc:
            ValidatedParams.from_raw(raw)
        assert exc.value.report == rep

    def test_sign_mismatch(self):
        rep = validate(RawParams(**{**BASE, "psi": -0.9, "omega": 0.2}))
        assert not rep.omega_psi_in_unit_interval
        assert not rep.overall

    def test_theta_boundary_excluded(self):
        rep = validate(RawParams(**{**BASE, "theta": 1.0}))
        assert not rep.theta_in_unit_interval

    def test_psi_boundary_excluded(self):
        rep = validate(RawParams(**{**BASE, "psi": 1.0, "omega": 0.1}))
        assert not rep.psi_below_one

    def test_all_failures_reported(self):
        rep = validate(RawParams(A=-1, alpha=-1, beta=-1, theta=2, psi=2, omega=2))
        assert set(rep.failures()) == set(ValidationReport.CONDITIONS)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_is_a_parameter_error(self, bad):
        with pytest.raises(ParameterError):
            RawParams(**{**BASE, "theta": bad})
        assert not issubclass(ParameterError, ValidationError)

    def test_positive_wp_forces_same_sign(self, phi_sample):
        for p in phi_sample:
            assert p.omega != 0 and p.psi != 0
            assert (p.omega > 0) == (p.psi > 0)

    def test_items_order(self):
        items = validate(CASE_1).items()
        assert [k for k, _ in items][-1] == "overall"
        assert len(items) == 8


class TestEvalF:
    def test_unit_capital(self, case):
        assert eval_f(case, 1.0) == pytest.approx(1.05, rel=1e-12)

    def test_origin(self, case):
        assert eval_f(case, 0.0) == 0.0

    def test_against_extended_precision(self):
        assert oracles.relerr(eval_f(CASE_1, 10.0), oracles.f(CASE_1, 10.0)) < 1e-12

    @pytest.mark.parametrize("k", np.geomspace(1e-12, 1e12, 25))
    def test_supported_range_accuracy(self, case, k):
        assert oracles.relerr(eval_f(case, k), oracles.f(case, k)) < 1e-9

    def test_negative_capital(self, case):
        with pytest.raises(DomainError):
            eval_f(case, -1.0)

    def test_array_input(self, case):
        k = np.array([0.0, 0.5, 1.0, 2.0])
        out = eval_f(case, k)
        assert out.shape == k.shape
        assert out[2] == pytest.approx(1.05)

    def test_overflow_is_signalled(self):
        p = ValidatedParams(A=1e300, alpha=1, beta=1, theta=0.9, psi=0.5, omega=0.1)
        with pytest.raises(NumericFailure):
            eval_f(p, 1e300)
        assert math.isfinite(log_f(p, 1e300))


class TestDerivatives:
    def test_f_prime_at_one(self, case):
        assert eval_f_prime(case, 1.0) == pytest.approx(1.05 * (0.2 * 0.98 + 0.8 * 0.8), rel=1e-12)
        assert eval_f_prime(case, 1.0) == pytest.approx(0.8778, rel=1e-12)

    def test_f_prime_matches_fd(self):
        fd = finite_diff_first(lambda x: eval_f(CASE_1, x), 2.0)
        assert eval_f_prime(CASE_1, 2.0) == pytest.approx(fd, rel=1e-7)

    def test_f_double_prime_at_one(self):
        assert eval_f_double_prime(CASE_1, 1.0) == pytest.approx(-0.1167432, rel=1e-12)
        assert eval_f_double_prime(CASE_1, 1.0) < 0

    def test_f_double_prime_case2_against_mp_diff(self):
        want = oracles.f_double_prime_numeric(CASE_2, 5.0)
        assert oracles.relerr(eval_f_double_prime(CASE_2, 5.0), want) < 1e-4

    @pytest.mark.parametrize("k", np.geomspace(1e-8, 1e8, 9))
    def test_against_extended_precision(self, case, k):
        assert oracles.relerr(eval_f_prime(case, k), oracles.f_prime(case, k)) < 1e-12
        assert oracles.relerr(eval_f_double_prime(case, k), oracles.f_double_prime(case, k)) < 1e-11

    @pytest.mark.parametrize("fn", [eval_f_prime, eval_f_double_prime, eval_g, capital_share, log_f])
    @pytest.mark.parametrize("k", [0.0, -2.0])
    def test_domain(self, fn, k):
        with pytest.raises(DomainError):
            fn(CASE_1, k)

    def test_derivative_consistency(self, case):
        for k in np.geomspace(0.1, 10, 21):
            fd1 = finite_diff_first(lambda x: eval_f(case, x), k)
            assert eval_f_prime(case, k) == pytest.approx(fd1, rel=1e-7)
            fd2 = finite_diff_first(lambda x: eval_f_prime(case, x), k)
            assert eval_f_double_prime(case, k) == pytest.approx(fd2, rel=1e-5)


class TestG:
    def test_case1(self):
        assert eval_g(CASE_1, 1.0) == pytest.approx(0.111184, rel=1e-12)

    def test_case2(self):
        assert eval_g(CASE_2, 1.0) == pytest.approx(0.163024, rel=1e-12)

    def test_identity_with_sigma_factors(self, phi_sample):
        for p in phi_sample:
            for k in (0.1, 1.0, 10.0):
                x = k**p.psi
                wp = p.omega * p.psi
                a = p.alpha * (p.theta + wp) * x + p.beta * p.theta
                b = p.alpha * (1 - p.theta - wp) * x + p.beta * (1 - p.theta)
                lhs = a * b - p.alpha * p.beta * p.omega * p.psi**2 * x
                assert lhs == pytest.approx(eval_g(p, k), rel=1e-12)


class TestShare:
    def test_case1_unit(self):
        assert capital_share(CASE_1, 1.0) == pytest.approx(0.836, rel=1e-12)

    def test_small_k_limits(self):
        assert abs(capital_share(CASE_1, 1e-8) - 0.8) < 1e-6
        assert abs(capital_share(CASE_2, 1e-8) - 0.98) < 1e-6

    def test_matches_definition(self, case):
        for k in np.geomspace(1e-3, 1e3, 13):
            assert capital_share(case, k) == pytest.approx(k * eval_f_prime(case, k) / eval_f(case, k), rel=1e-13)

    def test_bounds_and_monotonicity(self, phi_sample):
        k = np.geomspace(1e-3, 1e3, 65)
        for p in phi_sample:
            s = capital_share(p, k)
            lo, hi = sorted((p.theta, p.theta + p.omega * p.psi))
            assert np.all((s > lo) & (s < hi))
            d = np.diff(s)
            assert np.all(d > 0) if p.psi > 0 else np.all(d < 0)


class TestLogF:
    def test_unit(self, case):
        assert log_f(case, 1.0) == pytest.approx(math.log(1.05), rel=1e-14)

    def test_tiny_capital_case2(self):
        v = log_f(CASE_2, 1e-12)
        assert math.isfinite(v)
        assert oracles.relerr(math.exp(v), oracles.f(CASE_2, 1e-12)) < 1e-12

    def test_large_capital_dominant_term(self):
        p = CASE_1
        lnk = math.log(1e12)
        approx = p.theta * lnk + p.omega * (math.log(p.alpha) + p.psi * lnk) + math.log(p.A)
        assert abs(log_f(p, 1e12) - approx) <= 1e-9

    def test_consistency(self, phi_sample):
        k = np.geomspace(1e-3, 1e3, 33)
        for p in phi_sample:
            np.testing.assert_allclose(np.exp(log_f(p, k)), eval_f(p, k), rtol=1e-12)


def test_phi_positivity_ten_thousand_draws():
    k = np.geomspace(1e-8, 1e8, 33)
    for p in draws(10_000, seed=99):
        assert np.all(eval_f(p, k) > 0)
        assert np.all(eval_f_prime(p, k) > 0)
        assert np.all(eval_f_double_prime(p, k) < 0)
        assert np.all(eval_g(p, k) > 0)


phi = st.tuples(
    st.floats(0.02, 0.98),
    st.floats(-2.0, 0.98).filter(lambda s: abs(s) > 0.05),
    st.floats(0.02, 0.98),
    st.floats(-2, 2),
    st.floats(-2, 2),
    st.floats(-1, 1),
).filter(lambda t: 0.01 < t[0] + t[2] < 0.99)


def _params(t):
    theta, psi, wp, la, lalpha, lbeta = t
    return ValidatedParams(
        A=math.exp(la), alpha=math.exp(lalpha), beta=math.exp(lbeta),
        theta=theta, psi=psi, omega=wp / psi,
    )


@settings(max_examples=200, deadline=None)
@given(phi, st.floats(-3, 3))
def test_scaling_degeneracy(t, logc):
    p = _params(t)
    c = math.exp(logc)
    q = ValidatedParams(A=p.A * c ** (-p.omega), alpha=c * p.alpha, beta=c * p.beta,
                        theta=p.theta, psi=p.psi, omega=p.omega)
    k = np.geomspace(1e-3, 1e3, 13)
    np.testing.assert_allclose(eval_f(q, k), eval_f(p, k), rtol=1e-12)


@settings(max_examples=200, deadline=None)
@given(phi, st.floats(-8, 8))
def test_signs_hold_pointwise(t, e):
    p = _params(t)
    k = 10.0**e
    assert eval_f(p, k) > 0
    assert eval_f_prime(p, k) > 0
    assert eval_f_double_prime(p, k) < 0
