"""Covariance builders and the truncated-shift matrix basis.

Two covariance constructions: the band-limited map theta(f) whose entry
(a, b) integrates exp(i(a-b)x) f(min(a,b)/n, x), and the moving-average
covariance built from a transfer function.  The companion basis {M_k} uses a
nilpotent (truncated) shift instead of the cyclic one, giving exact
Frobenius norms 2*pi*(n - j2) and exact orthogonality; its distance to the
cyclic family shrinks like K^(1/4)/sqrt(n).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._linalg import DENSE_N_MAX, check_size, check_symmetric, sym_eig
from .circulant import build_mcheck_basis
from .errors import ConfigurationError, DomainError, PreconditionError, RangeError
from .report import CheckResult, fmt_float
from .spectral import (
    NEG,
    POS,
    BasisIndex,
    QuadratureGrid,
    SpectralDensity,
    TransferFunction,
    basis_norm,
    default_grid,
    enumerate_indices,
)

TWO_PI = 2.0 * math.pi


def abstract_rho(rho_star: float, safety: float = 0.9) -> float:
    """Eigenvalue band parameter for the matrix experiment.

    theta(f) eigenvalues live in [2 pi rho_star, 2 pi / rho_star]; the band
    [rho, 1/rho] must contain them on both sides, so take the tighter end and
    shrink by a safety factor.
    """
    if not (0.0 < rho_star <= 1.0):
        raise ConfigurationError("rho_star must lie in (0, 1]")
    return safety * min(TWO_PI * rho_star, rho_star / TWO_PI)


@dataclass
class CovarianceMatrix:
    """Dense real symmetric covariance with binary and CSV export."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        check_symmetric(a, tol=1e-12, what="covariance")
        self.entries = 0.5 * (a + a.T)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def eig_range(self):
        w = np.linalg.eigvalsh(self.entries)
        return float(w[0]), float(w[-1])

    def spectral_check(self, lo: float, hi: float, delta: float = 0.0) -> list:
        wmin, wmax = self.eig_range()
        return [
            CheckResult("covariance.eig_lower", "spectral-band", lo - delta, wmin),
            CheckResult("covariance.eig_upper", "spectral-band", wmax, hi + delta),
        ]

    def save_binary(self, path):
        with open(path, "wb") as fh:
            fh.write(struct.pack("<Q", self.n))
            fh.write(self.entries.astype("<f8").tobytes(order="C"))

    @classmethod
    def load_binary(cls, path) -> "CovarianceMatrix":
        with open(path, "rb") as fh:
            raw = fh.read(8)
            if len(raw) != 8:
                raise RangeError("covariance file too short for header")
            (n,) = struct.unpack("<Q", raw)
            body = fh.read()
        if len(body) != 8 * n * n:
            raise RangeError("covariance file body does not match header size")
        entries = np.frombuffer(body, dtype="<f8").reshape(n, n).copy()
        return cls(entries)

    def save_csv(self, path):
        with open(path, "w", newline="") as fh:
            for row in self.entries:
                fh.write(",".join(fmt_float(v) for v in row) + "\r\n")


def _band_profile(idx: BasisIndex, n: int) -> np.ndarray:
    """Strip values of the truncated-shift image of one basis function."""
    j, j2 = idx.j, idx.j2
    trig = np.cos if idx.parity == POS else np.sin
    nrm = basis_norm(idx)
    m = np.arange(n - j2)
    if j2 == 0:
        return TWO_PI * nrm * trig(TWO_PI * j * m / n)
    return math.pi * nrm * trig(TWO_PI * j * m / (n - j2))


def _fill_band(out: np.ndarray, j2: int, values: np.ndarray):
    n = out.shape[0]
    m = np.arange(n - j2)
    if j2 == 0:
        out[m, m] += values
    else:
        out[m, m + j2] += values
        out[m + j2, m] += values


class BasisSystem:
    """Orthonormal symmetric matrices {M_k} plus raw norms and companions.

    mats holds the normalized stack in enumeration order; raw matrices are
    recovered as raw_norms[k] * mats[k].  The cyclic companion stack is built
    lazily since only proximity studies need it.
    """

    def __init__(self, n: int, k1: int, k2: int):
        check_size(n)
        if not (k1 < n / 4 and k2 < n / 4):
            raise PreconditionError(f"need k1, k2 < n/4, got ({k1},{k2}) at n={n}")
        self.n = n
        self.k1 = k1
        self.k2 = k2
        self.indices = enumerate_indices(k1, k2)
        self.K = len(self.indices)
        self.raw_norms = np.array(
            [math.sqrt(TWO_PI * (n - idx.j2)) for idx in self.indices]
        )
        self.mats = np.zeros((self.K, n, n))
        self._profiles = []
        for pos, idx in enumerate(self.indices):
            prof = _band_profile(idx, n)
            self._profiles.append(prof)
            _fill_band(self.mats[pos], idx.j2, prof)
            self.mats[pos] /= self.raw_norms[pos]
        self._mcheck = None
        self._spectral_norms = None

    @property
    def mcheck(self) -> np.ndarray:
        if self._mcheck is None:
            self._mcheck = build_mcheck_basis(self.n, self.k1, self.k2)
        return self._mcheck

    def raw_mat(self, k: int) -> np.ndarray:
        return self.raw_norms[k] * self.mats[k]

    def project(self, a) -> np.ndarray:
        """Frobenius coefficients <A, M_k> for a dense symmetric matrix."""
        a = np.asarray(a, dtype=float)
        return np.einsum("kij,ij->k", self.mats, a)

    def combine(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=float)
        if vec.shape != (self.K,):
            raise ConfigurationError("coefficient vector length mismatch")
        return np.tensordot(vec, self.mats, axes=1)

    def quad_form(self, x) -> np.ndarray:
        """x^T M_k x for all k, the pilot statistic of one observation."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise ConfigurationError("observation length mismatch")
        out = np.empty(self.K)
        for pos, idx in enumerate(self.indices):
            prof = self._profiles[pos]
            j2 = idx.j2
            if j2 == 0:
                q = float(prof @ (x * x))
            else:
                q = 2.0 * float(prof @ (x[: self.n - j2] * x[j2:]))
            out[pos] = q / self.raw_norms[pos]
        return out

    def spectral_norms(self) -> np.ndarray:
        """Exact spectral norms per k via banded eigensolves."""
        if self._spectral_norms is None:
            out = np.empty(self.K)
            for pos, idx in enumerate(self.indices):
                j2 = idx.j2
                bands = np.zeros((j2 + 1, self.n))
                prof = self._profiles[pos] / self.raw_norms[pos]
                if j2 == 0:
                    bands[0] = prof
                else:
                    bands[j2, : self.n - j2] = prof
                w = scipy.linalg.eig_banded(
                    bands, lower=True, eigvals_only=True, select="a"
                )
                out[pos] = float(np.max(np.abs(w)))
            self._spectral_norms = out
        return self._spectral_norms

    def spectral_norm_bound(self) -> float:
        """Row-sum bound on the raw matrices: 2*sqrt(2*pi)."""
        return 2.0 * math.sqrt(TWO_PI)

    def gram(self) -> np.ndarray:
        flat = self.mats.reshape(self.K, -1)
        return flat @ flat.T


def build_basis(n: int, k1: int, k2: int) -> BasisSystem:
    return BasisSystem(n, k1, k2)


def build_theta(f, n: int, grid: QuadratureGrid = None) -> CovarianceMatrix:
    """Covariance with entry (a,b) = integral exp(i(a-b)x) f(min(a,b)/n, x) dx.

    Closed form for densities in the basis span; quadrature in x for
    callables.  The result is banded for span densities (band j2 <= k2).
    """
    check_size(n)
    out = np.zeros((n, n))
    if isinstance(f, SpectralDensity):
        for idx, c in f.coeffs.items():
            if c == 0.0:
                continue
            j, j2 = idx.j, idx.j2
            if j2 >= n:
                raise PreconditionError("density band exceeds matrix size")
            trig = np.cos if idx.parity == POS else np.sin
            xweight = math.pi * (2.0 if j2 == 0 else 1.0)
            m = np.arange(n - j2)
            vals = c * basis_norm(idx) * xweight * trig(TWO_PI * j * m / n)
            _fill_band(out, j2, vals)
        return CovarianceMatrix(out)
    grid = grid or default_grid()
    u = np.arange(n) / n
    fvals = np.asarray(f(u[:, None], grid.x[None, :]), dtype=float)  # (n, nx)
    d = np.arange(n)
    cosdx = np.cos(np.outer(d, grid.x))  # (n, nx)
    h = fvals @ (grid.wx[None, :] * cosdx).T  # h[m, d]
    i = np.arange(n)
    mins = np.minimum.outer(i, i)
    diffs = np.abs(np.subtract.outer(i, i))
    return CovarianceMatrix(h[mins, diffs])


def build_vartheta(a, n: int, grid: QuadratureGrid = None, tol: float = 1e-8) -> CovarianceMatrix:
    """Moving-average covariance: entry (s,t) integrates e^{ix(s-t)} A A-bar.

    Exact banded form for TransferFunction inputs; quadrature for callables.
    A noticeably asymmetric result means the symbol was not conjugate
    symmetric, which is an input error.
    """
    check_size(n)
    u = np.arange(n) / n
    if isinstance(a, TransferFunction):
        ms = sorted(a.components)
        cvals = {m: a.components[m].eval(u) for m in ms}
        for m in ms:
            leak = float(np.max(np.abs(cvals[m].imag)))
            if leak > tol:
                raise DomainError("transfer components must be real-valued")
            cvals[m] = cvals[m].real
        lo, hi = ms[0], ms[-1]
        out = np.zeros((n, n))
        s = np.arange(n)
        for d in range(-(hi - lo), hi - lo + 1):
            # entry (s, s+d) sums c_m(s/n) c_{m-d}((s+d)/n) over valid m
            rows = s[(s + d >= 0) & (s + d < n)]
            cols = rows + d
            acc = np.zeros(rows.size)
            for m in ms:
                if (m - d) in a.components:
                    acc += cvals[m][rows] * cvals[m - d][cols]
            out[rows, cols] += TWO_PI * acc
        sym = 0.5 * (out + out.T)
        if float(np.max(np.abs(out - out.T))) > tol * max(1.0, float(np.max(np.abs(out)))):
            raise DomainError("covariance came out asymmetric; check the symbol")
        return CovarianceMatrix(sym)
    grid = grid or default_grid()
    avals = np.asarray(a(u[:, None], grid.x[None, :]), dtype=complex)  # (n, nx)
    g = avals * np.exp(1j * np.outer(np.arange(n), grid.x)) * np.sqrt(grid.wx)[None, :]
    v = g @ np.conj(g.T)
    if float(np.max(np.abs(v.imag))) > tol * max(1.0, float(np.max(np.abs(v.real)))):
        raise DomainError("covariance has an imaginary part; check conjugate symmetry")
    return CovarianceMatrix(0.5 * (v.real + v.real.T))


def basis_proximity(basis: BasisSystem) -> float:
    """max_k Frobenius distance between the two normalized families."""
    diffs = basis.mats - basis.mcheck
    return float(np.max(np.sqrt(np.einsum("kij,kij->k", diffs, diffs))))


def density_coefficients(f, basis: BasisSystem, grid: QuadratureGrid = None) -> np.ndarray:
    """<f, phi_k> in enumeration order; exact for span densities."""
    if isinstance(f, SpectralDensity):
        return np.array([f.coeffs.get(idx, 0.0) for idx in basis.indices])
    grid = grid or default_grid()
    table = grid.project(f, basis.indices)
    return np.array([table[idx] for idx in basis.indices])


def presmoothing_residual(f, n: int, basis: BasisSystem, grid: QuadratureGrid = None):
    """(frobErr, relErr) of the covariance against its basis reconstructions.

    frobErr uses the raw matrices weighted by the density coefficients;
    relErr whitens the Frobenius projection by theta^{-1/2} on both sides.
    """
    if basis.n != n:
        raise ConfigurationError("basis size does not match n")
    theta = build_theta(f, n, grid).entries
    coeffs = density_coefficients(f, basis, grid)
    recon = basis.combine(coeffs * basis.raw_norms)
    frob_err = float(np.linalg.norm(theta - recon))

    w, v = sym_eig(theta)
    if w[0] <= 0.0:
        raise RangeError("covariance must be positive definite for whitening")
    inv_sqrt = (v * (w ** -0.5)) @ v.T
    c_theta = basis.combine(basis.project(theta))
    rel_err = float(np.linalg.norm(inv_sqrt @ (theta - c_theta) @ inv_sqrt))
    return frob_err, rel_err


def class_c1(s: float, L: float, cutoff: int = 4000) -> float:
    """Uniform first-argument derivative bound over the class, s > 2.

    2*sqrt(2*pi*L) times the root of the lattice sum of (j^2+j2^2)^(1-s)
    over nonzero nonnegative pairs; a radial integral bounds the tail.
    """
    if s <= 2.0:
        raise ConfigurationError("the derivative bound needs s > 2")
    j = np.arange(0, cutoff + 1, dtype=float)
    jj, kk = np.meshgrid(j, j, indexing="ij")
    w = jj * jj + kk * kk
    w[0, 0] = np.inf
    lattice = float(np.sum(w ** (1.0 - s)))
    # quarter-plane tail beyond radius cutoff: int r^(2-2s+1) dr * pi/2
    tail = (math.pi / 2.0) * cutoff ** (4.0 - 2.0 * s) / (2.0 * s - 4.0)
    return 2.0 * math.sqrt(TWO_PI) * math.sqrt(L) * math.sqrt(lattice + tail)


def theta_lipschitz_check(
    f: SpectralDensity, g: SpectralDensity, n: int, grid: QuadratureGrid = None
) -> list:
    """Both Frobenius-Lipschitz bounds as report entries."""
    grid = grid or default_grid()
    lhs = float(np.linalg.norm(build_theta(f, n, grid).entries - build_theta(g, n, grid).entries) ** 2)
    hvals = f.on_grid(grid) - g.on_grid(grid)
    h_sup = float(np.max(np.abs(hvals)))
    h_l2_sq = float(grid.integrate(hvals**2))
    out = [
        CheckResult(
            "theta.lipschitz_sup",
            "frobenius-lipschitz",
            lhs,
            12.0 * math.pi**2 * n * h_sup**2,
        )
    ]
    if f.s > 2.0 and g.s > 2.0:
        c1 = class_c1(min(f.s, g.s), max(f.L, g.L))
        rhs = 6.0 * math.pi * n * (h_l2_sq + 4.0 * math.pi * c1 * h_sup / n)
        out.append(CheckResult("theta.lipschitz_l2", "frobenius-lipschitz", lhs, rhs))
    return out


def coeff_identity_check(f: SpectralDensity, basis: BasisSystem) -> list:
    """Residual of the coefficient shortcut against its certified budget.

    The Frobenius coefficient of theta(f) against M_k is close to, but not
    exactly, <f, phi_k> times the raw norm; the gap per basis function is at
    most sqrt(32 pi^3) k1 k2 / sqrt(n).
    """
    theta = build_theta(f, basis.n).entries
    alpha = basis.project(theta)
    coeffs = density_coefficients(f, basis)
    shortcut = coeffs * basis.raw_norms
    resid = float(np.max(np.abs(alpha - shortcut)))
    per_l = math.sqrt(32.0 * math.pi**3) * basis.k1 * basis.k2 / math.sqrt(basis.n)
    budget = float(np.sum(np.abs(coeffs))) * per_l
    return [CheckResult("theta.coeff_shortcut", "coefficient-identity", resid, budget)]


def theta_spectral_check(
    cov: CovarianceMatrix, rho_star: float, delta: float = 0.5
) -> list:
    return cov.spectral_check(TWO_PI * rho_star, TWO_PI / rho_star, delta)
