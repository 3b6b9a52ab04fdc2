"""Characteristic-function analysis of localized quadratic statistics.

Conditionally on the localizing covariance, the vector of quadratic
statistics has a characteristic function that factors over the eigenvalues
of a matrix pencil.  This module evaluates that product exactly, expands
the standardized version in an Edgeworth-type series with certified
coefficient and remainder bounds, bounds Fourier tails, and inverts the
characteristic function numerically to measure total-variation distance
from the Gaussian limit (K <= 2).
"""

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.special import gamma as gamma_fn
from scipy.stats import norm as norm_dist

from ._linalg import check_symmetric, spectral_norm, sym_inv, sym_inv_sqrt, sym_sqrt
from .errors import PreconditionError, RangeError, TermBudgetError
from .report import CheckResult
from .rng import make_rng

__all__ = [
    "CharFnContext",
    "EdgeworthExpansion",
    "RadialProfile",
    "build_char_context",
    "char_fn",
    "char_fn_modulus",
    "char_fn_standardized",
    "context_from_state",
    "edgeworth_build",
    "edgeworth_radius",
    "fourier_tail_bound",
    "fourier_tail_integral",
    "invert_cf_1d",
    "moment_diagnostics",
    "remainder_bound",
    "standardized_exp_series",
    "standardized_log_characteristic",
    "tv_against_gaussian_1d",
    "tv_oracle",
]


# ---------------------------------------------------------------------------
# context


@dataclass
class CharFnContext:
    """Eigen-ready data for the conditional characteristic function.

    a_stack holds the whitened-and-weighted basis matrices
    A_k = C_theta^{1/2} C^{-1} M_k C^{-1} C_theta^{1/2}; d_vec their traces
    (the centering vector); d_stack the standardized combinations
    D_k = sum_l (Gamma^{-1/2})_{kl} A_l, for which {sqrt(2) D_k} is
    Frobenius-orthonormal.  mu is the spectral budget controlling every
    bound downstream.
    """

    n: int
    a_stack: np.ndarray
    d_vec: np.ndarray
    gamma_theta: np.ndarray
    gamma_inv_sqrt: np.ndarray
    d_stack: np.ndarray
    mu: float

    @property
    def K(self) -> int:
        return self.a_stack.shape[0]

    def pencil(self, t) -> np.ndarray:
        """sum_k t_k A_k for t in the raw (unstandardized) coordinates."""
        t = np.asarray(t, dtype=float)
        return np.tensordot(t, self.a_stack, axes=(0, 0))

    def standardized_pencil(self, t) -> np.ndarray:
        """sum_k t_k D_k for t in the standardized coordinates."""
        t = np.asarray(t, dtype=float)
        return np.tensordot(t, self.d_stack, axes=(0, 0))


def build_char_context(c_theta, c_mat, basis, ortho_tol=1e-8):
    """Assemble a CharFnContext from covariance pair and basis system."""
    c_theta = np.asarray(c_theta, dtype=float)
    c_mat = np.asarray(c_mat, dtype=float)
    n = basis.n
    if c_theta.shape != (n, n) or c_mat.shape != (n, n):
        raise PreconditionError("covariances must match the basis dimension")
    check_symmetric(c_theta, what="target covariance")
    check_symmetric(c_mat, what="localized covariance")

    root = sym_sqrt(c_theta)
    cinv = sym_inv(c_mat)
    half = cinv @ root
    a_stack = np.matmul(half.T, np.matmul(basis.mats, half))
    a_stack = 0.5 * (a_stack + np.transpose(a_stack, (0, 2, 1)))

    d_vec = np.trace(a_stack, axis1=1, axis2=2)
    flat = a_stack.reshape(len(a_stack), -1)
    gamma_theta = 2.0 * (flat @ flat.T)
    gamma_theta = 0.5 * (gamma_theta + gamma_theta.T)
    gamma_inv_sqrt = sym_inv_sqrt(gamma_theta)
    d_stack = np.tensordot(gamma_inv_sqrt, a_stack, axes=(1, 0))

    dflat = d_stack.reshape(len(d_stack), -1)
    gram = dflat @ dflat.T
    K = len(d_stack)
    defect = np.max(np.abs(gram - 0.5 * np.eye(K)))
    if defect > ortho_tol:
        raise RuntimeError(
            f"standardized stack lost orthonormality: defect {defect:.3e}"
        )

    sp_sq = np.sum(basis.spectral_norms() ** 2)
    mu = (
        spectral_norm(c_theta)
        * spectral_norm(cinv) ** 2
        * spectral_norm(gamma_inv_sqrt)
        * math.sqrt(sp_sq)
    )
    return CharFnContext(
        n=n,
        a_stack=a_stack,
        d_vec=d_vec,
        gamma_theta=gamma_theta,
        gamma_inv_sqrt=gamma_inv_sqrt,
        d_stack=d_stack,
        mu=float(mu),
    )


def context_from_state(state):
    """CharFnContext for an assembled localization state."""
    return build_char_context(state.c_theta, state.c_mat, state.basis)


# ---------------------------------------------------------------------------
# characteristic function


def char_fn(t, ctx) -> complex:
    """Product form of the conditional characteristic function at t.

    Each factor (1 - 2i*lam)^{-1/2} uses the principal branch, which is
    unambiguous because every 1 - 2i*lam has real part one.
    """
    lam = np.linalg.eigvalsh(ctx.pencil(t))
    return complex(np.prod((1.0 - 2j * lam) ** (-0.5)))


def char_fn_modulus(t, ctx) -> float:
    """|char_fn(t)| through the closed form prod (1 + 4 lam^2)^{-1/4}."""
    lam = np.linalg.eigvalsh(ctx.pencil(t))
    return float(np.prod((1.0 + 4.0 * lam**2) ** (-0.25)))


def char_fn_standardized(t, ctx) -> complex:
    """Characteristic function of the centered, whitened statistic."""
    t = np.asarray(t, dtype=float)
    v = ctx.gamma_inv_sqrt @ t
    phase = float(v @ ctx.d_vec)
    return complex(np.exp(-1j * phase) * char_fn(v, ctx))


def standardized_log_characteristic(t, ctx) -> complex:
    """log of char_fn_standardized evaluated without branch ambiguity."""
    t = np.asarray(t, dtype=float)
    v = ctx.gamma_inv_sqrt @ t
    lam = np.linalg.eigvalsh(ctx.pencil(v))
    return complex(
        -1j * float(v @ ctx.d_vec) - 0.5 * np.sum(np.log(1.0 - 2j * lam))
    )


def standardized_exp_series(t, ctx) -> complex:
    """char_fn_standardized(t) with the Gaussian factor exp(-|t|^2/2) removed."""
    t = np.asarray(t, dtype=float)
    return char_fn_standardized(t, ctx) * math.exp(0.5 * float(t @ t))


def cumulant_series_partial(t, ctx, lmax) -> complex:
    """Partial sum (l = 3..lmax) of the trace series for

        log char_fn_standardized(t) + |t|^2 / 2.

    Converges for |sum t_k D_k|_sp < 1/2.
    """
    w = np.linalg.eigvalsh(ctx.standardized_pencil(t))
    total = 0.0 + 0.0j
    for ell in range(3, lmax + 1):
        total += 0.5 * (2j) ** ell * np.sum(w**ell) / ell
    return complex(total)


class RadialProfile:
    """One-dimensional slice r -> char_fn_standardized(r * u).

    Along a fixed unit direction u the pencil eigenvalues scale linearly
    in the radius, so a single symmetric eigendecomposition serves every
    r.  psi_star is vectorized over radius arrays.
    """

    def __init__(self, ctx, u):
        u = np.asarray(u, dtype=float)
        nrm = float(np.linalg.norm(u))
        if nrm == 0.0:
            raise PreconditionError("direction must be nonzero")
        u = u / nrm
        v = ctx.gamma_inv_sqrt @ u
        self.eigs = np.linalg.eigvalsh(ctx.pencil(v))
        self.shift = float(v @ ctx.d_vec)
        self.mu = ctx.mu
        self.n = ctx.n
        self.direction = u

    def psi_star(self, r):
        r = np.asarray(r, dtype=float)
        z = 1.0 - 2j * np.multiply.outer(r, self.eigs)
        out = np.exp(-0.5 * np.sum(np.log(z), axis=-1) - 1j * r * self.shift)
        return out

    def abs_psi(self, r):
        r = np.asarray(r, dtype=float)
        z = 1.0 + 4.0 * np.multiply.outer(r, self.eigs) ** 2
        return np.exp(-0.25 * np.sum(np.log(z), axis=-1))


# ---------------------------------------------------------------------------
# Edgeworth expansion

_BUDGET = 1_000_000


def _monomials(K, degree):
    """Multi-indices in K variables of the given total degree."""
    out = []
    for combo in combinations_with_replacement(range(K), degree):
        m = [0] * K
        for k in combo:
            m[k] += 1
        out.append(tuple(m))
    return out


def _power_sums(eigs, lmax):
    """[sum eig^l for l = 1..lmax]."""
    return np.array([np.sum(eigs**ell) for ell in range(1, lmax + 1)])


def _trace_polys_k1(d_stack, Q):
    w = np.linalg.eigvalsh(d_stack[0])
    ps = _power_sums(w, Q)
    return {ell: {(ell,): complex(ps[ell - 1])} for ell in range(3, Q + 1)}


def _trace_polys_k2(d_stack, Q):
    # tr[(t1 D1 + t2 D2)^l] = sum_b c_{l-b,b} t1^{l-b} t2^b; the slice
    # z -> tr[(D1 + z D2)^l] is a degree-l polynomial whose coefficients
    # are exactly the c's, recovered from Chebyshev-node samples.
    nodes = np.cos(np.pi * (2 * np.arange(Q + 1) + 1) / (2 * (Q + 1)))
    samples = np.empty((Q + 1, Q))
    for i, z in enumerate(nodes):
        w = np.linalg.eigvalsh(d_stack[0] + z * d_stack[1])
        samples[i] = _power_sums(w, Q)
    polys = {}
    for ell in range(3, Q + 1):
        van = np.vander(nodes, ell + 1, increasing=True)
        coef, *_ = np.linalg.lstsq(van, samples[:, ell - 1], rcond=None)
        polys[ell] = {(ell - b, b): complex(coef[b]) for b in range(ell + 1)}
    return polys


def _trace_polys_general(d_stack, Q, seed):
    K = len(d_stack)
    monos = {ell: _monomials(K, ell) for ell in range(3, Q + 1)}
    total = sum(len(v) for v in monos.values())
    if total > _BUDGET:
        raise TermBudgetError(
            f"{total} monomials exceed the {_BUDGET} budget; reduce K or Q"
        )
    widest = max(len(v) for v in monos.values())
    ndir = 2 * widest
    rng = make_rng(seed)
    dirs = rng.standard_normal((ndir, K))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    samples = np.empty((ndir, Q))
    for i, u in enumerate(dirs):
        w = np.linalg.eigvalsh(np.tensordot(u, d_stack, axes=(0, 0)))
        samples[i] = _power_sums(w, Q)
    polys = {}
    for ell in range(3, Q + 1):
        design = np.stack(
            [np.prod(dirs**np.array(m), axis=1) for m in monos[ell]], axis=1
        )
        coef, res, *_ = np.linalg.lstsq(design, samples[:, ell - 1], rcond=None)
        fitted = design @ coef
        scale = max(np.max(np.abs(samples[:, ell - 1])), 1e-300)
        if np.max(np.abs(fitted - samples[:, ell - 1])) > 1e-8 * scale:
            raise RuntimeError(
                f"trace-polynomial interpolation unstable at degree {ell}"
            )
        polys[ell] = {
            m: complex(c) for m, c in zip(monos[ell], coef) if c != 0.0
        }
    return polys


def _poly_mul_truncated(p, q, max_deg):
    out = {}
    for ma, ca in p.items():
        da = sum(ma)
        for mb, cb in q.items():
            if da + sum(mb) > max_deg:
                continue
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0.0) + ca * cb
    return out


@dataclass
class EdgeworthExpansion:
    """Polynomial correction P(t) = 1 + sum nu_m t^m, degrees 3..Q."""

    Q: int
    K: int
    mu: float
    nu: dict = field(default_factory=dict)

    def poly_eval(self, t) -> complex:
        t = np.asarray(t, dtype=float)
        total = 1.0 + 0.0j
        for m, c in self.nu.items():
            total += c * np.prod(t ** np.array(m))
        return complex(total)

    def coefficient_bound(self, m) -> float:
        q = int(sum(m))
        multinomial = math.factorial(q)
        for mk in m:
            multinomial //= math.factorial(int(mk))
        return float(multinomial) * 2.0**q * self.mu ** (q / 3.0) * q**0.25

    @property
    def validity_radius(self) -> float:
        return edgeworth_radius(self.Q, self.K, self.mu)


def edgeworth_build(ctx, Q, seed=0) -> EdgeworthExpansion:
    """Exact degree-Q truncation of exp of the cumulant trace series.

    The trace polynomials t -> tr[(sum t_k D_k)^l] are recovered exactly
    (K = 1 directly, K = 2 from Chebyshev slices, K >= 3 from seeded
    directional interpolation), then the exponential is multiplied out,
    dropping every monomial above degree Q.
    """
    if Q < 2:
        raise PreconditionError("expansion order Q must be at least 2")
    K = ctx.K
    if K == 1:
        polys = _trace_polys_k1(ctx.d_stack, Q)
    elif K == 2:
        polys = _trace_polys_k2(ctx.d_stack, Q)
    else:
        polys = _trace_polys_general(ctx.d_stack, Q, seed)

    zero = (0,) * K
    series = {}
    for ell, poly in polys.items():
        w = 0.5 * (2j) ** ell / ell
        for m, c in poly.items():
            series[m] = series.get(m, 0.0) + w * c

    result = {zero: 1.0 + 0.0j}
    term = {zero: 1.0 + 0.0j}
    for j in range(1, Q // 3 + 1):
        term = _poly_mul_truncated(term, series, Q)
        for m, c in term.items():
            result[m] = result.get(m, 0.0) + c / math.factorial(j)
    nu = {m: c for m, c in result.items() if sum(m) >= 3}
    return EdgeworthExpansion(Q=Q, K=K, mu=ctx.mu, nu=nu)


def edgeworth_radius(Q, K, mu) -> float:
    """Radius of the ball on which the remainder bound is finite.

    The geometric-series step behind the bound needs
    2 sqrt(K) mu^{1/3} (Q+1)^{1/(4Q+4)} |t| < 1, so the admissible radius
    carries (Q+1)^{1/(4Q+4)} in the denominator.
    """
    return mu ** (-1.0 / 3.0) / (2.0 * math.sqrt(K) * (Q + 1) ** (1.0 / (4 * Q + 4)))


def remainder_bound(t, expansion) -> float:
    """Closed-form bound on |exp-series minus polynomial| at t."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    tnorm = float(np.linalg.norm(t))
    Q, K, mu = expansion.Q, expansion.K, expansion.mu
    base = 2.0 * math.sqrt(K) * mu ** (1.0 / 3.0) * tnorm
    ratio = base * (Q + 1) ** (1.0 / (4 * Q + 4))
    if ratio >= 1.0:
        raise RangeError(
            f"|t| = {tnorm:.6g} outside the validity radius "
            f"{edgeworth_radius(Q, K, mu):.6g}"
        )
    return (Q + 1) ** 0.25 * base ** (Q + 1) / (1.0 - ratio)


# ---------------------------------------------------------------------------
# Fourier tails


def fourier_tail_bound(R, ctx) -> float:
    """Closed-form bound on the tail integral of |char_fn_standardized|."""
    K, n, mu = ctx.K, ctx.n, ctx.mu
    q = 1.0 / (16.0 * mu**2)
    return float(
        (n * math.pi) ** (K / 2.0)
        * (1.0 + R**2 / n) ** (-q + K / 2.0 + 1.0)
        / gamma_fn(K / 2.0)
    )


def _tail_numeric_k1(R, ctx):
    profile = RadialProfile(ctx, np.array([1.0]))

    def integrand(r):
        return float(profile.abs_psi(np.array([r]))[0])

    val, _ = quad(integrand, R, np.inf, limit=200)
    return 2.0 * val


def _tail_numeric_k2(R, ctx, n_angles):
    angles = (np.arange(n_angles) + 0.5) * np.pi / n_angles
    total = 0.0
    for phi in angles:
        profile = RadialProfile(ctx, np.array([np.cos(phi), np.sin(phi)]))

        def integrand(r, profile=profile):
            return float(profile.abs_psi(np.array([r]))[0]) * r

        val, _ = quad(integrand, R, np.inf, limit=200)
        total += val
    return 2.0 * total * (np.pi / n_angles)


def fourier_tail_integral(R, ctx, n_angles=64) -> CheckResult:
    """Numeric tail mass of |char_fn_standardized| beyond radius R vs bound.

    Returns a CheckResult with lhs = numeric, rhs = bound.  When the
    integrability margin mu^{-2} > 8K + 16 fails, the check is reported
    as skipped with the margin recorded instead.
    """
    K = ctx.K
    margin = ctx.mu ** (-2.0)
    needed = 8.0 * K + 16.0
    if margin <= needed:
        return CheckResult(
            check_id=f"fourier-tail-R{R:g}",
            ref="tail-integrability",
            lhs=float(needed),
            rhs=float(margin),
            skipped=True,
        )
    if K == 1:
        numeric = _tail_numeric_k1(R, ctx)
    elif K == 2:
        numeric = _tail_numeric_k2(R, ctx, n_angles)
    else:
        raise PreconditionError("tail quadrature implemented for K <= 2 only")
    return CheckResult(
        check_id=f"fourier-tail-R{R:g}",
        ref="tail-quadrature",
        lhs=float(numeric),
        rhs=fourier_tail_bound(R, ctx),
    )


# ---------------------------------------------------------------------------
# inversion and total variation


def invert_cf_1d(psi, T, x, steps=None):
    """Density values (1/pi) Re int_0^T exp(-i t x) psi(t) dt at points x.

    psi must accept a 1-d radius array; Simpson weights on a uniform t
    grid, evaluated in x chunks to cap memory.
    """
    x = np.asarray(x, dtype=float)
    if steps is None:
        steps = max(2 * int(np.ceil(T / 0.02)), 64)
    if steps % 2 == 1:
        steps += 1
    tgrid = np.linspace(0.0, T, steps + 1)
    w = np.ones(steps + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (T / steps) / 3.0
    weighted = np.asarray(psi(tgrid), dtype=complex) * w
    out = np.empty_like(x)
    chunk = max(1, int(2e6 // (steps + 1)))
    for lo in range(0, len(x), chunk):
        xs = x[lo : lo + chunk]
        kernel = np.exp(-1j * np.multiply.outer(xs, tgrid))
        out[lo : lo + chunk] = (kernel @ weighted).real / np.pi
    return out


def tv_against_gaussian_1d(psi, T, x_max=20.0, dx=0.002, ref_pdf=None):
    """(1/2) int |f_psi - ref| dx with f_psi from invert_cf_1d.

    ref defaults to the standard normal density.
    """
    x = np.arange(-x_max, x_max + dx / 2, dx)
    dens = invert_cf_1d(psi, T, x)
    ref = norm_dist.pdf(x) if ref_pdf is None else ref_pdf(x)
    return float(0.5 * np.trapezoid(np.abs(dens - ref), dx=dx))


def _choose_truncation(abs_psi, tol_tail):
    """Smallest dyadic T with int_T^inf |psi| below tol_tail."""
    T = 4.0
    for _ in range(40):
        tail, _ = quad(lambda r: float(abs_psi(np.array([r]))[0]), T, np.inf, limit=200)
        if tail <= tol_tail:
            return T
        T *= 1.5
    raise RangeError("characteristic function tail does not decay; no usable T")


def _tv_oracle_k1(ctx, tol_tail, x_max, dx, cf_override):
    profile = RadialProfile(ctx, np.array([1.0]))
    if cf_override is None:
        psi = profile.psi_star
        abs_psi = profile.abs_psi
    else:
        psi = lambda r: cf_override(r, np.array([1.0]))
        abs_psi = lambda r: np.abs(psi(r))
    T = _choose_truncation(abs_psi, tol_tail)
    return tv_against_gaussian_1d(psi, T, x_max=x_max, dx=dx), T


def _tv_oracle_k2(ctx, tol_tail, x_max, dx, n_angles, cf_override):
    """Filtered back-projection on per-angle radial slices.

    f(x) = (1/2pi) int_0^pi g_phi(<u_phi, x>) dphi with
    g_phi(s) = (1/pi) Re int_0^T psi*(r u_phi) r exp(-i r s) dr.
    """
    angles = (np.arange(n_angles) + 0.5) * np.pi / n_angles
    grid = np.arange(-x_max, x_max + dx / 2, dx)
    X, Y = np.meshgrid(grid, grid, indexing="ij")
    smax = x_max * math.sqrt(2.0) + 1.0
    ds = dx / 2.0
    sgrid = np.arange(-smax, smax + ds / 2, ds)
    accum = np.zeros_like(X)
    t_used = 0.0
    for phi in angles:
        u = np.array([math.cos(phi), math.sin(phi)])
        if cf_override is None:
            profile = RadialProfile(ctx, u)
            psi = profile.psi_star
            abs_psi = profile.abs_psi
        else:
            psi = lambda r, u=u: cf_override(r, u)
            abs_psi = lambda r: np.abs(psi(r))
        T = _choose_truncation(lambda r: abs_psi(r) * r, tol_tail)
        t_used = max(t_used, T)
        filtered = invert_cf_1d(lambda r: psi(r) * r, T, sgrid)
        proj = X * u[0] + Y * u[1]
        # cubic interpolation; linear would cap the grid accuracy near 1e-5
        accum += CubicSpline(sgrid, filtered)(proj)
    dens = accum * (np.pi / n_angles) / (2.0 * np.pi)
    ref = np.exp(-(X**2 + Y**2) / 2.0) / (2.0 * np.pi)
    return float(0.5 * np.sum(np.abs(dens - ref)) * dx * dx), t_used


def tv_oracle(
    ctx,
    tol_tail=1e-8,
    x_max=None,
    dx=None,
    n_angles=180,
    cf_override=None,
    details=False,
):
    """Total-variation distance of the standardized law from N(0, I_K).

    Densities come from numeric Fourier inversion; only K <= 2 is
    supported.  cf_override replaces the characteristic function (radius
    array, unit direction) -> complex array, for cross-checks against
    closed-form laws.  With details=True returns (tv, info) where info
    records the truncation radius and the analytic tail bound at it.
    """
    K = ctx.K
    if K > 2:
        raise PreconditionError("tv_oracle supports K <= 2 only")
    if ctx.mu ** (-2.0) <= 8.0 * K and cf_override is None:
        raise RangeError(
            "characteristic function not certifiably integrable at this mu"
        )
    if K == 1:
        x_max = 20.0 if x_max is None else x_max
        dx = 0.002 if dx is None else dx
        val, t_used = _tv_oracle_k1(ctx, tol_tail, x_max, dx, cf_override)
    else:
        x_max = 8.0 if x_max is None else x_max
        dx = 0.04 if dx is None else dx
        val, t_used = _tv_oracle_k2(ctx, tol_tail, x_max, dx, n_angles, cf_override)
    tv = float(min(max(val, 0.0), 1.0))
    if not details:
        return tv
    if cf_override is None and ctx.mu ** (-2.0) > 8.0 * K + 16.0:
        tail = fourier_tail_bound(t_used, ctx)
    else:
        tail = None
    return tv, {"truncation": t_used, "tail_bound": tail}


# ---------------------------------------------------------------------------
# diagnostics for K > 2


def moment_diagnostics(ctx) -> dict:
    """Third-cumulant tensor of the standardized statistic.

    cum3[k, l, m] = 8 tr(D_k D_l D_m); for symmetric factors every ordering
    of the product has the same trace, and every entry tends to zero in
    the Gaussian limit.
    """
    K = ctx.K
    d = ctx.d_stack
    cum3 = np.zeros((K, K, K))
    for k in range(K):
        for l in range(k, K):
            prod = d[k] @ d[l]
            for m in range(l, K):
                val = 8.0 * float(np.sum(prod * d[m].T))
                for idx in {(k, l, m), (k, m, l), (l, k, m), (l, m, k), (m, k, l), (m, l, k)}:
                    cum3[idx] = val
    return {
        "third_cumulant": cum3,
        "max_abs_third_cumulant": float(np.max(np.abs(cum3))),
        "mu": ctx.mu,
    }
