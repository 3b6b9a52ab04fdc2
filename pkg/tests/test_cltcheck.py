import cmath
import math

import numpy as np
import pytest

from lsequiv.basis_cov import build_basis, build_theta
from lsequiv.cltcheck import (
    RadialProfile,
    build_char_context,
    char_fn,
    char_fn_modulus,
    char_fn_standardized,
    context_from_state,
    cumulant_series_partial,
    edgeworth_build,
    edgeworth_radius,
    fourier_tail_bound,
    fourier_tail_integral,
    invert_cf_1d,
    moment_diagnostics,
    remainder_bound,
    standardized_exp_series,
    standardized_log_characteristic,
    tv_against_gaussian_1d,
    tv_oracle,
)
from lsequiv.errors import PreconditionError, RangeError, TermBudgetError
from lsequiv.gaussianize import ExperimentState, LocalizationConfig
from lsequiv.rng import make_rng
from lsequiv.spectral import random_density

N = 64
CTX = build_char_context(np.eye(N), np.eye(N), build_basis(N, 0, 0))


def test_mu_scale_invariant():
    # for the identity window both unit and 2 pi scalings give mu = 1/sqrt(2n)
    scaled = build_char_context(
        2.0 * math.pi * np.eye(N), 2.0 * math.pi * np.eye(N), build_basis(N, 0, 0)
    )
    assert CTX.mu == pytest.approx(1.0 / math.sqrt(2.0 * N), rel=1e-12)
    assert scaled.mu == pytest.approx(1.0 / math.sqrt(2.0 * N), rel=1e-12)


@pytest.mark.parametrize("t", [0.3, 1.1, 2.7])
def test_quadratic_law_chi_square_cf(t):
    # identity window: the summary is a standardized chi-square with n terms
    root = math.sqrt(2.0 * N)
    expected = (1.0 - 2j * t / root) ** (-N / 2.0) * cmath.exp(-1j * t * math.sqrt(N / 2.0))
    got = char_fn_standardized(np.array([t]), CTX)
    assert abs(got - expected) <= 1e-12


def test_log_branch_and_series_consistency():
    t = np.array([0.4])
    log_val = standardized_log_characteristic(t, CTX)
    assert abs(cmath.exp(log_val) - char_fn_standardized(t, CTX)) <= 1e-12
    partial = cumulant_series_partial(t, CTX, 40)
    assert abs(partial - (log_val + 0.5 * float(t @ t))) <= 1e-12
    assert abs(cmath.exp(partial) - standardized_exp_series(t, CTX)) <= 1e-12


def test_series_partial_sums_monotone_refinement():
    t = np.array([0.6])
    target = standardized_log_characteristic(t, CTX) + 0.5 * float(t @ t)
    errs = [abs(cumulant_series_partial(t, CTX, lmax) - target) for lmax in (3, 6, 12)]
    assert errs[0] > errs[1] > errs[2]


def test_radial_profile_matches_cf():
    u = np.array([1.0])
    prof = RadialProfile(CTX, u)
    r = 1.3
    assert abs(prof.psi_star(r) - char_fn_standardized(r * u, CTX)) <= 1e-13
    assert abs(prof.abs_psi(r) - abs(char_fn_standardized(r * u, CTX))) <= 1e-13
    assert char_fn_modulus(r * u, CTX) == pytest.approx(abs(char_fn(r * u, CTX)), abs=1e-14)


def test_moment_diagnostics_identity_window():
    md = moment_diagnostics(CTX)
    assert md["mu"] == pytest.approx(CTX.mu, rel=0)
    # third cumulant of the standardized chi-square is sqrt(8/n)
    assert md["max_abs_third_cumulant"] == pytest.approx(math.sqrt(8.0 / N), rel=1e-10)


def test_third_order_coefficient_exact():
    exp = edgeworth_build(CTX, 4, seed=0)
    assert sorted(exp.nu) == [(3,), (4,)]
    kappa3 = 8.0 * N / (2.0 * N) ** 1.5
    assert exp.nu[(3,)] == pytest.approx(-1j * kappa3 / 6.0, abs=1e-12)


COEFF_CASES = [(256, (0, 0), 8), (1024, (0, 0), 8), (256, (0, 1), 5)]


@pytest.mark.parametrize("n,window,q", COEFF_CASES)
def test_coefficient_bounds_hold(n, window, q):
    ctx = build_char_context(np.eye(n), np.eye(n), build_basis(n, *window))
    exp = edgeworth_build(ctx, q, seed=0)
    for m, coef in exp.nu.items():
        assert abs(coef) <= exp.coefficient_bound(m)


def test_validity_radius_matches_rate():
    exp = edgeworth_build(CTX, 4, seed=0)
    assert exp.validity_radius == pytest.approx(edgeworth_radius(4, 1, CTX.mu), rel=0)


def test_remainder_within_bound_inside_region():
    exp = edgeworth_build(CTX, 4, seed=0)
    radius = exp.validity_radius
    rng = make_rng(123, stream=50)
    for i in range(20):
        u = rng.standard_normal(1)
        u /= np.linalg.norm(u)
        t = (0.05 + 0.9 * i / 19.0) * radius * u
        diff = abs(
            complex(char_fn_standardized(t, CTX)) * math.exp(0.5 * float(t @ t))
            - exp.poly_eval(t)
        )
        # 1e-12 absolute floor covers cf evaluation noise at tiny remainders
        assert diff <= remainder_bound(t, exp) + 1e-12


def test_remainder_bound_rejects_outside_region():
    exp = edgeworth_build(CTX, 4, seed=0)
    with pytest.raises(RangeError):
        remainder_bound(np.array([1.0001 * exp.validity_radius]), exp)


def test_edgeworth_guards():
    with pytest.raises(PreconditionError):
        edgeworth_build(CTX, 1)
    wide = build_char_context(np.eye(64), np.eye(64), build_basis(64, 1, 5))
    with pytest.raises(TermBudgetError):
        edgeworth_build(wide, 8)


def test_tail_integral_below_bound():
    chk = fourier_tail_integral(5.0, CTX)
    assert chk.check_id == "fourier-tail-R5"
    assert not chk.skipped
    assert chk.lhs <= chk.rhs
    assert chk.rhs == pytest.approx(fourier_tail_bound(5.0, CTX), rel=0)


def test_tail_integral_skipped_when_not_integrable():
    ctx = build_char_context(np.eye(16), np.eye(16), build_basis(16, 0, 1))
    chk = fourier_tail_integral(5.0, ctx)
    assert chk.skipped and chk.passed
    assert chk.ref == "tail-integrability"


def test_tv_oracle_chi_square_value():
    tv, details = tv_oracle(CTX, details=True)
    # quadrature of |chi2_64 standardized - normal| / 2 gives 0.0448425615
    assert tv == pytest.approx(0.0448425615, abs=1e-7)
    assert details["truncation"] > 0.0
    assert details["tail_bound"] is not None


def test_tv_oracle_gaussian_override_null():
    ctx2 = build_char_context(np.eye(N), np.eye(N), build_basis(N, 0, 1))
    tv = tv_oracle(ctx2, cf_override=lambda r, u: np.exp(-0.5 * r**2))
    assert tv <= 1e-6


def test_tv_oracle_guards():
    small = build_char_context(np.eye(8), np.eye(8), build_basis(8, 0, 1))
    with pytest.raises(RangeError):
        tv_oracle(small)
    three = build_char_context(np.eye(N), np.eye(N), build_basis(N, 1, 0))
    with pytest.raises(PreconditionError):
        tv_oracle(three)


def test_tv_against_shifted_gaussian_closed_form():
    # TV(N(0,1), N(1,1)) = 2 Phi(1/2) - 1
    psi = lambda t: np.exp(1j * t - 0.5 * t**2)
    tv = tv_against_gaussian_1d(psi, 40.0)
    assert tv == pytest.approx(0.3829249225480262, abs=1e-6)


def test_invert_cf_recovers_normal_density():
    xs = np.array([0.0, 1.0])
    dens = invert_cf_1d(lambda u: np.exp(-0.5 * u * u), 30.0, xs)
    expected = np.exp(-0.5 * xs**2) / math.sqrt(2.0 * math.pi)
    np.testing.assert_allclose(dens, expected, atol=1e-12)


def test_context_from_state_matches_direct_build():
    n = 32
    basis = build_basis(n, 1, 1)
    theta = build_theta(random_density(1, 1, make_rng(2, stream=30)), n)
    state = ExperimentState.build(
        basis, LocalizationConfig(beta=1.0, gamma=3.0), theta=theta, rng=make_rng(0, stream=41)
    )
    ctx = context_from_state(state)
    direct = build_char_context(state.c_theta, state.c_mat, basis)
    assert ctx.mu == pytest.approx(direct.mu, rel=0)
    np.testing.assert_allclose(ctx.d_vec, direct.d_vec, atol=0)
