"""Experiment chain from Gaussian vectors to Gaussian coefficient summaries.

The pipeline: a pilot quadratic-form estimate of the covariance coefficients,
a truncated-noise localization that turns the unknown covariance into a known
matrix C close to it, the sufficient statistic T built from C, and the
closed-form Gaussian summaries (d, Gamma variants) that T converges to.  GOE
perturbation experiments and the symmetric-perturbation inequality live here
too, since the equivalence chain passes through them.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ._linalg import (
    check_symmetric,
    eig_range,
    frob,
    spectral_norm,
    sym_eig,
    sym_inv,
    sym_inv_sqrt,
    sym_sqrt,
)
from .basis_cov import BasisSystem, CovarianceMatrix
from .errors import ConfigurationError, LocalizationError, PreconditionError
from .report import CheckResult
from .rng import make_rng

TWO_PI = 2.0 * math.pi


@dataclass
class LocalizationConfig:
    """Contamination scale, truncation radius, and the stream seed."""

    beta: float
    gamma: float
    seed: int = 0

    def __post_init__(self):
        if self.beta <= 0.0 or self.gamma <= 0.0:
            raise ConfigurationError("beta and gamma must be positive")

    def acceptance_probability(self, k: int) -> float:
        """P(|N(0, beta^2 I_K)| <= gamma), exact via the chi-square cdf."""
        if not math.isfinite(self.gamma):
            return 1.0
        return float(stats.chi2.cdf((self.gamma / self.beta) ** 2, df=k))

    def truncation_budget(self, k: int) -> float:
        """K beta^2 / gamma^2, the reported tail-mass budget."""
        if not math.isfinite(self.gamma):
            return 0.0
        return k * self.beta**2 / self.gamma**2


def sample_truncated_noise(cfg: LocalizationConfig, k: int, rng=None) -> np.ndarray:
    """Rejection draw of N(0, beta^2 I_k) conditioned on norm <= gamma."""
    accept = cfg.acceptance_probability(k)
    if accept < 1e-6:
        raise ConfigurationError(
            f"truncation acceptance probability {accept:.3g} too small; "
            "raise gamma or lower beta"
        )
    rng = rng if rng is not None else make_rng(cfg.seed)
    while True:
        draw = cfg.beta * rng.standard_normal(k)
        if not math.isfinite(cfg.gamma) or float(np.linalg.norm(draw)) <= cfg.gamma:
            return draw


def build_localized_C(alpha_theta, eta_tilde, basis: BasisSystem):
    """(C, Delta, B) for the revealed coefficients alpha + eta.

    C must be positive definite and the relative perturbation C^{-1} Delta
    must be a spectral contraction; both failures raise a localization error
    so Monte Carlo drivers can count them.
    """
    alpha_theta = np.asarray(alpha_theta, dtype=float)
    eta_tilde = np.asarray(eta_tilde, dtype=float)
    c_mat = basis.combine(alpha_theta + eta_tilde)
    w, v = sym_eig(c_mat)
    if w[0] <= 0.0:
        raise LocalizationError(f"localized C not positive definite (min eig {w[0]:.3g})")
    c_inv = (v * (1.0 / w)) @ v.T
    c_theta = basis.combine(alpha_theta)
    delta = c_mat - c_theta
    contraction = spectral_norm(c_inv @ delta)
    if contraction >= 1.0:
        raise LocalizationError(
            f"perturbation not a contraction (|C^-1 Delta|_sp = {contraction:.3g})"
        )
    b_theta = c_inv + c_inv @ delta @ c_inv
    return c_mat, delta, b_theta


def pilot_alpha(x, basis: BasisSystem) -> np.ndarray:
    """Quadratic-form coefficients <x x^T, M_k> of one observation."""
    return basis.quad_form(x)


def pilot_risk_bound(k: int, rho: float) -> float:
    return 4.0 * k / rho**2


def sufficient_T(x, c_mat, basis: BasisSystem) -> np.ndarray:
    """T_k = x^T C^{-1} M_k C^{-1} x, the sufficient statistic given C."""
    x = np.asarray(x, dtype=float)
    y = np.linalg.solve(c_mat, x)
    return basis.quad_form(y)


def gaussian_summaries(c_theta, c_mat, basis: BasisSystem, alpha_theta=None):
    """(d, Gamma_theta, Gamma, Gamma_tilde_theta) for the summary experiments.

    All three matrices are Gram matrices of symmetric conjugated basis
    stacks, so symmetry and positive semidefiniteness are structural.  When
    alpha_theta is supplied (meaning c_theta is exactly its combination),
    the identity d = Gamma alpha / 2 is enforced to 1e-8 relative.
    """
    c_theta = np.asarray(c_theta, dtype=float)
    c_mat = np.asarray(c_mat, dtype=float)
    ci_sqrt = sym_inv_sqrt(c_mat)
    ct_sqrt = sym_sqrt(c_theta)
    cti_sqrt = sym_inv_sqrt(c_theta)
    k_count = basis.K

    r_stack = np.matmul(np.matmul(ci_sqrt, basis.mats), ci_sqrt)
    gamma = 2.0 * r_stack.reshape(k_count, -1) @ r_stack.reshape(k_count, -1).T

    ci = ci_sqrt @ ci_sqrt
    d_vec = basis.project(ci @ c_theta @ ci)

    half = np.matmul(ct_sqrt, np.matmul(ci, np.matmul(basis.mats, ci)))
    a_stack = np.matmul(half, ct_sqrt)
    gamma_theta = 2.0 * a_stack.reshape(k_count, -1) @ a_stack.reshape(k_count, -1).T

    rt_stack = np.matmul(np.matmul(cti_sqrt, basis.mats), cti_sqrt)
    gamma_tilde = 2.0 * rt_stack.reshape(k_count, -1) @ rt_stack.reshape(k_count, -1).T

    gamma = 0.5 * (gamma + gamma.T)
    gamma_theta = 0.5 * (gamma_theta + gamma_theta.T)
    gamma_tilde = 0.5 * (gamma_tilde + gamma_tilde.T)

    if alpha_theta is not None:
        target = 0.5 * gamma @ np.asarray(alpha_theta, dtype=float)
        rel = float(np.linalg.norm(d_vec - target) / max(np.linalg.norm(d_vec), 1e-300))
        if rel > 1e-8:
            raise RuntimeError(f"summary identity d = Gamma alpha / 2 off by {rel:.3g}")
    return d_vec, gamma_theta, gamma, gamma_tilde


def neumann_residual_bound(gamma: float, c_rho: float, sp_sq_sum: float) -> float:
    """Geometric-series bound on the whitened inversion residual.

    sum_{k>=1} (gamma/c_rho)^{k+1} (sum_j |M_j|_sp^2)^{k/2}; infinite when the
    series diverges, which the caller reports rather than hides.
    """
    a = gamma / c_rho
    root_b = math.sqrt(sp_sq_sum)
    if a * root_b >= 1.0:
        return float("inf")
    return a**2 * root_b / (1.0 - a * root_b)


def neumann_residual(c_theta, c_mat, b_theta) -> float:
    """|C_theta^{-1/2} (B^{-1} - C_theta) C_theta^{-1/2}|_F, exact."""
    cti_sqrt = sym_inv_sqrt(np.asarray(c_theta, dtype=float))
    middle = sym_inv(np.asarray(b_theta, dtype=float)) - c_theta
    return frob(cti_sqrt @ middle @ cti_sqrt)


def goe_sample(n: int, rng) -> np.ndarray:
    """Symmetric Gaussian matrix: off-diagonal N(0,1), diagonal N(0,2)."""
    g = rng.standard_normal((n, n))
    out = (g + g.T) / math.sqrt(2.0)
    out[np.diag_indices(n)] = math.sqrt(2.0) * rng.standard_normal(n)
    return out


@dataclass
class ExperimentState:
    """Everything the chain of samplers needs, built once and frozen."""

    n: int
    basis: BasisSystem
    alpha_theta: np.ndarray
    eta_tilde: np.ndarray
    theta: np.ndarray
    c_theta: np.ndarray
    c_mat: np.ndarray
    delta: np.ndarray
    b_theta: np.ndarray
    d_vec: np.ndarray
    gamma_theta: np.ndarray
    gamma: np.ndarray
    gamma_tilde: np.ndarray
    config: LocalizationConfig

    @property
    def K(self) -> int:
        return self.basis.K

    @classmethod
    def build(
        cls,
        basis: BasisSystem,
        cfg: LocalizationConfig,
        alpha_theta=None,
        theta=None,
        rng=None,
    ) -> "ExperimentState":
        """Assemble the chain state from either coefficients or a covariance.

        With theta given, alpha_theta defaults to its basis projection (the
        pre-smoothing step); with only alpha_theta given, theta is taken to
        be the in-span combination itself.
        """
        if alpha_theta is None and theta is None:
            raise ConfigurationError("need alpha_theta or theta")
        if theta is not None:
            theta = np.asarray(
                theta.entries if isinstance(theta, CovarianceMatrix) else theta,
                dtype=float,
            )
        if alpha_theta is None:
            alpha_theta = basis.project(theta)
        alpha_theta = np.asarray(alpha_theta, dtype=float)
        c_theta = basis.combine(alpha_theta)
        if theta is None:
            theta = c_theta
        eta = sample_truncated_noise(cfg, basis.K, rng)
        c_mat, delta, b_theta = build_localized_C(alpha_theta, eta, basis)
        d_vec, gamma_theta, gamma, gamma_tilde = gaussian_summaries(
            c_theta, c_mat, basis, alpha_theta=alpha_theta
        )
        return cls(
            n=basis.n,
            basis=basis,
            alpha_theta=alpha_theta,
            eta_tilde=eta,
            theta=theta,
            c_theta=c_theta,
            c_mat=c_mat,
            delta=delta,
            b_theta=b_theta,
            d_vec=d_vec,
            gamma_theta=gamma_theta,
            gamma=gamma,
            gamma_tilde=gamma_tilde,
            config=cfg,
        )

    def summary(self) -> dict:
        lo_t, hi_t = eig_range(self.c_theta)
        lo_c, hi_c = eig_range(self.c_mat)
        return {
            "n": self.n,
            "K": self.K,
            "eig_c_theta": [lo_t, hi_t],
            "eig_c": [lo_c, hi_c],
            "delta_frob": frob(self.delta),
            "contraction": spectral_norm(np.linalg.solve(self.c_mat, self.delta)),
            "eta_norm": float(np.linalg.norm(self.eta_tilde)),
            "truncation_budget": self.config.truncation_budget(self.K),
        }


MODEL_IDS = ("A", "B", "D", "G", "H", "I", "J", "K", "L")


def _gaussian_vector(mean, cov, rng) -> np.ndarray:
    w, v = sym_eig(np.asarray(cov, dtype=float))
    if w[0] < -1e-10 * max(abs(w[-1]), 1.0):
        raise PreconditionError("covariance has a negative eigenvalue")
    root = v * np.sqrt(np.clip(w, 0.0, None))
    return np.asarray(mean, dtype=float) + root @ rng.standard_normal(len(w))


def sample_experiment(state: ExperimentState, model_id: str, rng) -> np.ndarray:
    """One observation from the named experiment in the chain."""
    if model_id not in MODEL_IDS:
        raise ConfigurationError(f"unknown experiment id {model_id!r}")
    if model_id == "A":
        return _gaussian_vector(np.zeros(state.n), state.theta, rng)
    if model_id == "B":
        return _gaussian_vector(np.zeros(state.n), state.c_theta, rng)
    if model_id == "D":
        return _gaussian_vector(np.zeros(state.n), sym_inv(state.b_theta), rng)
    if model_id == "G":
        return _gaussian_vector(state.d_vec, state.gamma_theta, rng)
    if model_id == "H":
        return _gaussian_vector(0.5 * state.gamma @ state.alpha_theta, state.gamma, rng)
    if model_id == "I":
        h_obs = _gaussian_vector(0.5 * state.gamma @ state.alpha_theta, state.gamma, rng)
        return 2.0 * np.linalg.solve(state.gamma, h_obs)
    if model_id == "L":
        return _gaussian_vector(
            state.alpha_theta, 4.0 * sym_inv(state.gamma_tilde), rng
        )
    ci_sqrt = sym_inv_sqrt(state.c_mat)
    goe = goe_sample(state.n, rng)
    if model_id == "J":
        return ci_sqrt @ state.c_theta @ ci_sqrt + goe
    return ci_sqrt @ state.delta @ ci_sqrt + goe


def j_statistics(state: ExperimentState, obs_matrix) -> np.ndarray:
    """tr(C^{-1/2} M_k C^{-1/2} Chat) for a matrix observation."""
    ci_sqrt = sym_inv_sqrt(state.c_mat)
    transformed = ci_sqrt @ np.asarray(obs_matrix, dtype=float) @ ci_sqrt
    return state.basis.project(0.5 * (transformed + transformed.T))


def sp_perturbation_check(a, b) -> CheckResult:
    """Whitened inverse-difference inequality for a symmetric perturbation.

    Skipped (with a report entry) when the whitened perturbation is not a
    spectral contraction, since the inequality presumes it.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    check_symmetric(a, what="first matrix")
    check_symmetric(b, what="second matrix")
    w, _ = sym_eig(a)
    if w[0] <= 0.0:
        raise PreconditionError("first matrix must be positive definite")
    ai_sqrt = sym_inv_sqrt(a)
    a_sqrt = sym_sqrt(a)
    e_mat = ai_sqrt @ (b - a) @ ai_sqrt
    eps_f = frob(e_mat)
    eps_sp = spectral_norm(e_mat)
    if eps_sp >= 1.0:
        return CheckResult(
            "perturbation.whitened_inverse",
            "spd-perturbation",
            lhs=eps_sp,
            rhs=1.0,
            skipped=True,
        )
    lhs = frob(a_sqrt @ (sym_inv(a) - sym_inv(b)) @ a_sqrt)
    rhs = eps_f / (1.0 - eps_sp)
    return CheckResult("perturbation.whitened_inverse", "spd-perturbation", lhs, rhs)


def likelihood_affinity_check(state: ExperimentState, reps: int, rng) -> CheckResult:
    """The log-likelihood ratio of D against C-noise is affine in T.

    Regresses the exact log-density difference on the sufficient statistic;
    the residual must vanish and the slopes must match -<Delta, M_k>/2.
    """
    n, k_count = state.n, state.K
    b_inv = sym_inv(state.b_theta)
    draws = np.empty((reps, k_count + 1))
    diffs = np.empty(reps)
    sign_b, logdet_b = np.linalg.slogdet(b_inv)
    sign_c, logdet_c = np.linalg.slogdet(state.c_mat)
    if sign_b <= 0 or sign_c <= 0:
        raise PreconditionError("covariances must be positive definite")
    for r in range(reps):
        x = _gaussian_vector(np.zeros(n), state.c_mat, rng)
        t_vec = sufficient_T(x, state.c_mat, state.basis)
        draws[r, :k_count] = t_vec
        draws[r, k_count] = 1.0
        quad_b = float(x @ np.linalg.solve(b_inv, x))
        quad_c = float(x @ np.linalg.solve(state.c_mat, x))
        diffs[r] = -0.5 * (quad_b + logdet_b) + 0.5 * (quad_c + logdet_c)
    coef, *_ = np.linalg.lstsq(draws, diffs, rcond=None)
    fitted = draws @ coef
    resid = float(np.max(np.abs(diffs - fitted)))
    slopes = coef[:k_count]
    expected = -0.5 * state.basis.project(state.delta)
    slope_err = float(np.max(np.abs(slopes - expected)))
    return CheckResult(
        "sufficiency.affine_loglik",
        "factorization",
        max(resid, slope_err),
        0.0,
        tol=1e-8,
    )


def observation_to_json(obs) -> str:
    arr = np.asarray(obs, dtype=float)
    return json.dumps(arr.tolist()) + "\n"
