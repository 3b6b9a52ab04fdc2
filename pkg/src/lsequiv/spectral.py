"""Tensor trig basis on [0,1] x [-pi,pi], densities, transfer functions.

The basis is cos(2*pi*j*t)*cos(j2*x) ("+" parity) and sin(2*pi*j*t)*cos(j2*x)
("-" parity, j >= 1), L2-normalized on the rectangle.  Densities carry a
smoothness budget: the squared coefficients weighted by (j^2 + j2^2)^s must
stay below L, and the values must stay inside [rho, 1/rho].  Everything here
is exact trig algebra or Gauss-Legendre quadrature; no FFT shortcuts, so the
same code paths serve tests and verification reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import ConfigurationError, DomainError, RangeError
from .report import CheckResult

POS = "+"
NEG = "-"

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, order=True)
class BasisIndex:
    """One tensor basis element.  parity "+" is cos in time, "-" is sin."""

    parity: str
    j: int
    j2: int

    def __post_init__(self):
        if self.parity not in (POS, NEG):
            raise ConfigurationError(f"parity must be '+' or '-', got {self.parity!r}")
        if self.j < 0 or self.j2 < 0:
            raise ConfigurationError("basis frequencies must be nonnegative")
        if self.parity == NEG and self.j < 1:
            raise ConfigurationError("sin-parity index needs j >= 1")

    @property
    def weight(self) -> float:
        """Smoothness weight (j^2 + j2^2)^s uses this base."""
        return float(self.j * self.j + self.j2 * self.j2)


def basis_norm(idx: BasisIndex) -> float:
    """L2 normalizer on [0,1] x [-pi,pi]."""
    if idx.parity == POS:
        if idx.j >= 1 and idx.j2 >= 1:
            return math.sqrt(2.0 / math.pi)
        if idx.j == 0 and idx.j2 == 0:
            return math.sqrt(1.0 / TWO_PI)
        return math.sqrt(1.0 / math.pi)
    # sin parity, j >= 1 enforced
    if idx.j2 >= 1:
        return math.sqrt(2.0 / math.pi)
    return math.sqrt(1.0 / math.pi)


def basis_eval(idx: BasisIndex, t, x):
    """Evaluate one basis function on broadcastable arrays t, x."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    if idx.parity == POS:
        tf = np.cos(TWO_PI * idx.j * t)
    else:
        tf = np.sin(TWO_PI * idx.j * t)
    return basis_norm(idx) * tf * np.cos(idx.j2 * x)


def enumerate_indices(k1: int, k2: int) -> list:
    """Cos block then sin block, j outer and j2 inner inside each block."""
    if k1 < 0 or k2 < 0:
        raise ConfigurationError("window sizes must be nonnegative")
    out = [BasisIndex(POS, j, j2) for j in range(k1 + 1) for j2 in range(k2 + 1)]
    out += [BasisIndex(NEG, j, j2) for j in range(1, k1 + 1) for j2 in range(k2 + 1)]
    return out


def leading_indices(count: int) -> list:
    """First `count` basis indices in frequency-shell order.

    Total order: weight j^2 + j2^2, then parity (cosine block first),
    then j, then j2.  Exhausts the whole countable family, unlike the
    rectangular window of enumerate_indices.
    """
    if count < 1:
        raise RangeError("count must be positive")
    reach = int(math.ceil(2.0 * math.sqrt(count))) + 2
    pool = [BasisIndex(POS, j, j2) for j in range(reach) for j2 in range(reach)]
    pool += [BasisIndex(NEG, j, j2) for j in range(1, reach) for j2 in range(reach)]
    pool.sort(key=lambda idx: (idx.weight, idx.parity, idx.j, idx.j2))
    if count > len(pool):
        raise RangeError(f"enumeration pool exhausted at {len(pool)}")
    return pool[:count]


def basis_count(k1: int, k2: int) -> int:
    return (2 * k1 + 1) * (k2 + 1)


class QuadratureGrid:
    """Tensor Gauss-Legendre grid on [0,1] x [-pi,pi] with cached factors.

    256 nodes per axis integrate trig polynomials far beyond any window this
    package uses, so quadrature error is negligible next to the tolerances in
    the verification checks.
    """

    def __init__(self, nt: int = 256, nx: int = 256):
        ut, wt = leggauss(nt)
        ux, wx = leggauss(nx)
        self.t = 0.5 * (ut + 1.0)
        self.wt = 0.5 * wt
        self.x = math.pi * ux
        self.wx = math.pi * wx
        self.nt = nt
        self.nx = nx
        self._tcache = {}
        self._xcache = {}

    @property
    def mesh(self):
        return np.meshgrid(self.t, self.x, indexing="ij")

    def time_factor(self, parity: str, j: int):
        key = (parity, j)
        if key not in self._tcache:
            if parity == POS:
                self._tcache[key] = np.cos(TWO_PI * j * self.t)
            else:
                self._tcache[key] = np.sin(TWO_PI * j * self.t)
        return self._tcache[key]

    def space_factor(self, j2: int):
        if j2 not in self._xcache:
            self._xcache[j2] = np.cos(j2 * self.x)
        return self._xcache[j2]

    def basis_values(self, idx: BasisIndex):
        return basis_norm(idx) * np.outer(
            self.time_factor(idx.parity, idx.j), self.space_factor(idx.j2)
        )

    def evaluate(self, fn):
        """Values of a callable f(t, x) on the grid, shape (nt, nx)."""
        tt, xx = self.mesh
        return np.asarray(fn(tt, xx), dtype=float)

    def integrate(self, values) -> float:
        return float(self.wt @ np.asarray(values) @ self.wx)

    def inner(self, values, idx: BasisIndex) -> float:
        tw = self.wt * self.time_factor(idx.parity, idx.j)
        xw = self.wx * self.space_factor(idx.j2)
        return float(basis_norm(idx) * (tw @ np.asarray(values) @ xw))

    def l2_norm(self, values) -> float:
        return math.sqrt(max(self.integrate(np.asarray(values) ** 2), 0.0))

    def project(self, values_or_fn, indices) -> dict:
        values = self._as_values(values_or_fn)
        return {idx: self.inner(values, idx) for idx in indices}

    def synthesize(self, coeffs: dict):
        out = np.zeros((self.nt, self.nx))
        for idx, c in coeffs.items():
            if c != 0.0:
                out += c * self.basis_values(idx)
        return out

    def _as_values(self, values_or_fn):
        if callable(values_or_fn):
            return self.evaluate(values_or_fn)
        return np.asarray(values_or_fn, dtype=float)


_DEFAULT_GRID = None


def default_grid() -> QuadratureGrid:
    global _DEFAULT_GRID
    if _DEFAULT_GRID is None:
        _DEFAULT_GRID = QuadratureGrid()
    return _DEFAULT_GRID


@dataclass
class GridFunction:
    """Values of a bivariate function on a quadrature grid."""

    grid: QuadratureGrid
    values: np.ndarray

    @classmethod
    def from_callable(cls, grid: QuadratureGrid, fn):
        return cls(grid, grid.evaluate(fn))

    def min(self) -> float:
        return float(np.min(self.values))

    def max(self) -> float:
        return float(np.max(self.values))

    def l2(self) -> float:
        return self.grid.l2_norm(self.values)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def log(self) -> "GridFunction":
        if self.min() <= 0.0:
            raise DomainError("log transform needs strictly positive values")
        return GridFunction(self.grid, np.log(self.values))

    def inv_sqrt(self) -> "GridFunction":
        if self.min() <= 0.0:
            raise DomainError("inverse square root needs strictly positive values")
        return GridFunction(self.grid, self.values ** -0.5)

    def project(self, indices) -> dict:
        return self.grid.project(self.values, indices)


def transform_log(grid: QuadratureGrid, values) -> np.ndarray:
    return GridFunction(grid, np.asarray(values, dtype=float)).log().values


def transform_inv_sqrt(grid: QuadratureGrid, values) -> np.ndarray:
    return GridFunction(grid, np.asarray(values, dtype=float)).inv_sqrt().values


def mirror_extend(fn):
    """Even reflection in the second argument: h(t, x) = fn(t, |x|)."""

    def even(t, x):
        return fn(t, np.abs(x))

    return even


@dataclass
class SpectralDensity:
    """Finite basis expansion with a smoothness budget and a range band."""

    coeffs: dict
    s: float
    L: float
    rho_star: float

    def __post_init__(self):
        if not (0.0 < self.rho_star <= 1.0):
            raise ConfigurationError("rho_star must lie in (0, 1]")
        self.coeffs = {idx: float(v) for idx, v in self.coeffs.items()}

    @property
    def k1(self) -> int:
        return max((idx.j for idx in self.coeffs), default=0)

    @property
    def k2(self) -> int:
        return max((idx.j2 for idx in self.coeffs), default=0)

    def eval(self, t, x):
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        out = np.zeros(np.broadcast(t, x).shape)
        for idx, c in self.coeffs.items():
            if c != 0.0:
                out += c * basis_eval(idx, t, x)
        return out

    def __call__(self, t, x):
        return self.eval(t, x)

    def on_grid(self, grid: QuadratureGrid) -> np.ndarray:
        return grid.synthesize(self.coeffs)

    def mean_level(self) -> float:
        """Average of the density over the rectangle."""
        c00 = self.coeffs.get(BasisIndex(POS, 0, 0), 0.0)
        return c00 / math.sqrt(TWO_PI)

    def sobolev_sum(self) -> float:
        return float(
            sum(c * c * idx.weight ** self.s for idx, c in self.coeffs.items())
        )

    def range_on_grid(self, grid: QuadratureGrid = None):
        grid = grid or default_grid()
        v = self.on_grid(grid)
        return float(np.min(v)), float(np.max(v))

    def check_membership(self, grid: QuadratureGrid = None) -> list:
        """Smoothness and range checks as report entries."""
        lo, hi = self.range_on_grid(grid)
        return [
            CheckResult("density.smoothness", "class-budget", self.sobolev_sum(), self.L),
            CheckResult("density.lower", "class-budget", self.rho_star, lo, tol=1e-12),
            CheckResult("density.upper", "class-budget", hi, 1.0 / self.rho_star, tol=1e-12),
        ]

    def require_membership(self, grid: QuadratureGrid = None):
        for chk in self.check_membership(grid):
            if not chk.passed:
                raise RangeError(f"density violates {chk.check_id}: {chk.lhs} vs {chk.rhs}")

    def to_json(self) -> str:
        items = [
            {"parity": idx.parity, "j": idx.j, "j2": idx.j2, "value": float(v)}
            for idx, v in sorted(self.coeffs.items())
        ]
        payload = {"s": self.s, "L": self.L, "rho_star": self.rho_star, "coeffs": items}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SpectralDensity":
        payload = json.loads(text)
        coeffs = {
            BasisIndex(it["parity"], int(it["j"]), int(it["j2"])): float(it["value"])
            for it in payload["coeffs"]
        }
        return cls(coeffs, float(payload["s"]), float(payload["L"]), float(payload["rho_star"]))

    def scaled_deviation(self, factor: float) -> "SpectralDensity":
        """Shrink every non-constant coefficient by a common factor."""
        zero = BasisIndex(POS, 0, 0)
        coeffs = {
            idx: (v if idx == zero else factor * v) for idx, v in self.coeffs.items()
        }
        return SpectralDensity(coeffs, self.s, self.L, self.rho_star)


class TrigPoly1D:
    """Trig polynomial sum_r c_r * exp(2*pi*i*r*u), Hermitian coefficients.

    Stored as a complex array over r = -deg..deg.  Products are exact
    coefficient convolutions, which keeps downstream covariance formulas
    free of quadrature error.
    """

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise ConfigurationError("coefficient array must have odd length")
        self.c = c

    @property
    def deg(self) -> int:
        return (self.c.size - 1) // 2

    @classmethod
    def zero(cls) -> "TrigPoly1D":
        return cls(np.zeros(1, dtype=complex))

    @classmethod
    def constant(cls, value) -> "TrigPoly1D":
        return cls(np.array([value], dtype=complex))

    @classmethod
    def from_real(cls, a0: float, a_cos=(), b_sin=()) -> "TrigPoly1D":
        """Build a0 + sum a_r cos(2 pi r u) + sum b_r sin(2 pi r u)."""
        a_cos = np.asarray(a_cos, dtype=float)
        b_sin = np.asarray(b_sin, dtype=float)
        deg = max(a_cos.size, b_sin.size)
        c = np.zeros(2 * deg + 1, dtype=complex)
        c[deg] = a0
        for r in range(1, deg + 1):
            ar = a_cos[r - 1] if r <= a_cos.size else 0.0
            br = b_sin[r - 1] if r <= b_sin.size else 0.0
            c[deg + r] = 0.5 * (ar - 1j * br)
            c[deg - r] = 0.5 * (ar + 1j * br)
        return cls(c)

    def real_parts(self):
        """Back to (a0, a_cos, b_sin); requires Hermitian coefficients."""
        if not self.is_real():
            raise DomainError("coefficients are not Hermitian")
        d = self.deg
        a0 = float(self.c[d].real)
        a = 2.0 * self.c[d + 1 :].real
        b = -2.0 * self.c[d + 1 :].imag
        return a0, np.asarray(a), np.asarray(b)

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.c - np.conj(self.c[::-1]))) <= tol * max(1.0, np.max(np.abs(self.c))))

    def coeff(self, r: int) -> complex:
        d = self.deg
        if -d <= r <= d:
            return complex(self.c[d + r])
        return 0.0 + 0.0j

    def eval(self, u):
        u = np.asarray(u, dtype=float)
        d = self.deg
        out = np.zeros(u.shape, dtype=complex)
        for r in range(-d, d + 1):
            out += self.c[d + r] * np.exp(2j * math.pi * r * u)
        return out

    def eval_real(self, u):
        return self.eval(u).real

    def __add__(self, other: "TrigPoly1D") -> "TrigPoly1D":
        d = max(self.deg, other.deg)
        c = np.zeros(2 * d + 1, dtype=complex)
        c[d - self.deg : d + self.deg + 1] += self.c
        c[d - other.deg : d + other.deg + 1] += other.c
        return TrigPoly1D(c)

    def __mul__(self, other):
        if isinstance(other, TrigPoly1D):
            return TrigPoly1D(np.convolve(self.c, other.c))
        return TrigPoly1D(self.c * other)

    __rmul__ = __mul__

    def conjugate(self) -> "TrigPoly1D":
        return TrigPoly1D(np.conj(self.c[::-1]))

    def mean(self) -> complex:
        return complex(self.c[self.deg])


@dataclass
class TransferFunction:
    """Moving-average symbol A(u, x) = sum_m c_m(u) exp(i m x).

    Each component c_m is a real-valued trig polynomial of the scaled time u,
    so the squared modulus |A|^2 expands exactly into the tensor cos/sin
    basis.  Components are keyed by the integer space frequency m.
    """

    components: dict

    def __post_init__(self):
        for m, poly in self.components.items():
            if not isinstance(poly, TrigPoly1D):
                raise ConfigurationError("components must be TrigPoly1D")
            if not poly.is_real(1e-10):
                raise ConfigurationError(f"component m={m} is not real-valued")

    @property
    def m_range(self):
        ms = sorted(self.components)
        return ms[0], ms[-1]

    @property
    def u_degree(self) -> int:
        return max(p.deg for p in self.components.values())

    def eval(self, u, x):
        u = np.asarray(u, dtype=float)
        x = np.asarray(x, dtype=float)
        out = np.zeros(np.broadcast(u, x).shape, dtype=complex)
        for m, poly in self.components.items():
            out += poly.eval(u) * np.exp(1j * m * x)
        return out

    def component(self, m: int) -> TrigPoly1D:
        return self.components.get(m, TrigPoly1D.zero())

    def squared_modulus_profiles(self) -> dict:
        """x-frequency profiles g_k(u) of |A|^2, keys k >= 0.

        g_k(u) = sum_m c_{m+k}(u) * conj(c_m(u)); real components make the
        conjugate a no-op but it is kept for exactness.
        """
        ms = sorted(self.components)
        lo, hi = ms[0], ms[-1]
        out = {}
        for k in range(0, hi - lo + 1):
            acc = TrigPoly1D.zero()
            for m in ms:
                if (m + k) in self.components:
                    acc = acc + self.components[m + k] * self.components[m].conjugate()
            out[k] = acc
        return out

    def to_spectral_density(self, s: float, L: float, rho_star: float) -> SpectralDensity:
        """Exact expansion of |A|^2 in the tensor basis."""
        profiles = self.squared_modulus_profiles()
        coeffs = {}
        for k, g in profiles.items():
            if not g.is_real(1e-10):
                raise DomainError("squared modulus profile is not real")
            a0, a, b = g.real_parts()
            # cos(k x) weight: 1 for k = 0, 2 for k >= 1 (conjugate pair)
            xw = 1.0 if k == 0 else 2.0
            vals = [(POS, 0, a0)]
            vals += [(POS, j, a[j - 1]) for j in range(1, g.deg + 1)]
            vals += [(NEG, j, b[j - 1]) for j in range(1, g.deg + 1)]
            for parity, j, v in vals:
                if parity == NEG and j == 0:
                    continue
                idx = BasisIndex(parity, j, k)
                c = xw * v / basis_norm(idx)
                if c != 0.0:
                    coeffs[idx] = coeffs.get(idx, 0.0) + c
        return SpectralDensity(coeffs, s, L, rho_star)


def random_transfer(k1: int, k2: int, rng, base: float = 1.0, scale: float = 0.15) -> TransferFunction:
    """Random symbol with a constant floor, components decaying in |m|."""
    comps = {}
    for m in range(-k2, k2 + 1):
        decay = scale / (1.0 + m * m)
        a0 = base if m == 0 else decay * rng.standard_normal()
        a = decay * rng.standard_normal(k1) / (1.0 + np.arange(1, k1 + 1)) ** 2
        b = decay * rng.standard_normal(k1) / (1.0 + np.arange(1, k1 + 1)) ** 2
        comps[m] = TrigPoly1D.from_real(a0, a, b)
    return TransferFunction(comps)


def random_density(
    k1: int,
    k2: int,
    rng,
    s: float = 11.0,
    L: float = 5.0,
    rho_star: float = 0.5,
    mean: float = None,
    amplitude: float = 0.8,
    grid: QuadratureGrid = None,
) -> SpectralDensity:
    """Seeded class member: random decaying coefficients, rescaled to fit.

    The deviation from the constant level is shrunk until both the range band
    and the smoothness budget hold with a little headroom, so the result is a
    strict interior point of the class.
    """
    grid = grid or default_grid()
    if mean is None:
        mean = 0.5 * (rho_star + 1.0 / rho_star)
    lo_room = mean - rho_star
    hi_room = 1.0 / rho_star - mean
    if lo_room <= 0.0 or hi_room <= 0.0:
        raise ConfigurationError("mean level must sit strictly inside the range band")

    coeffs = {BasisIndex(POS, 0, 0): mean * math.sqrt(TWO_PI)}
    for idx in enumerate_indices(k1, k2):
        if idx.j == 0 and idx.j2 == 0:
            continue
        decay = (1.0 + idx.weight) ** (-(s + 1.0) / 2.0)
        coeffs[idx] = decay * rng.standard_normal()

    dens = SpectralDensity(coeffs, s, L, rho_star)
    dev = dens.on_grid(grid) - mean
    dev_sup = float(np.max(np.abs(dev)))
    if dev_sup > 0.0:
        target = amplitude * min(lo_room, hi_room)
        dens = dens.scaled_deviation(target / dev_sup)
    ssum = dens.sobolev_sum()
    if ssum > 0.9 * L:
        dens = dens.scaled_deviation(math.sqrt(0.9 * L / ssum))
    dens.require_membership(grid)
    return dens


def polynomial_decay_density(
    k1: int,
    k2: int,
    s: float = 11.0,
    L: float = 5.0,
    rho_star: float = 0.5,
    mean: float = 1.0,
    amplitude: float = 0.5,
    grid: QuadratureGrid = None,
) -> SpectralDensity:
    """Deterministic class member with alternating-sign decaying coefficients."""
    grid = grid or default_grid()
    coeffs = {BasisIndex(POS, 0, 0): mean * math.sqrt(TWO_PI)}
    for idx in enumerate_indices(k1, k2):
        if idx.j == 0 and idx.j2 == 0:
            continue
        sign = -1.0 if (idx.j + idx.j2) % 2 else 1.0
        base = 1.0 if idx.parity == POS else 0.5
        coeffs[idx] = sign * base * (1.0 + idx.weight) ** (-(s + 1.0) / 2.0)

    dens = SpectralDensity(coeffs, s, L, rho_star)
    dev = dens.on_grid(grid) - mean
    dev_sup = float(np.max(np.abs(dev)))
    room = min(mean - rho_star, 1.0 / rho_star - mean)
    if room <= 0.0:
        raise ConfigurationError("mean level must sit strictly inside the range band")
    if dev_sup > 0.0:
        dens = dens.scaled_deviation(amplitude * room / dev_sup)
    ssum = dens.sobolev_sum()
    if ssum > 0.9 * L:
        dens = dens.scaled_deviation(math.sqrt(0.9 * L / ssum))
    dens.require_membership(grid)
    return dens
