"""Circulant-type matrix algebra and the matrix-to-function isometry.

The dictionary elements are Lambda^j * S^j2 with S the cyclic shift and
Lambda the diagonal of n-th roots of unity.  Products obey an exact
twisted-convolution law, so all norms, products, and defects are computed in
coefficient space; dense matrices are only materialized for oracles and
exports.

Two coefficient conventions coexist on purpose:

* "plain": the raw dictionary.  The product of two elements picks up the
  phase exp(2*pi*i*j1p*j2/n).  The function-side relabeling is the identity,
  which is what the approximate-multiplicativity defect is measured against.
* "symmetric": dictionary elements are pre-rotated by exp(i*pi*j*j2/n).
  Conjugation and transposition then act as pure index flips, which makes
  the images of the real cos/sin basis functions exactly real and symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import check_size
from .errors import ConfigurationError, PreconditionError, RangeError
from .spectral import NEG, POS, BasisIndex, basis_norm, enumerate_indices

TWO_PI = 2.0 * math.pi


def lambda_phase(n: int, j) -> complex:
    """exp(2*pi*i*j/n); j may be a float for half-integer twists."""
    return np.exp(2j * math.pi * j / n)


def shift_permutation(n: int) -> np.ndarray:
    """Cyclic shift S with S[i, (i+1) mod n] = 1."""
    check_size(n)
    s = np.zeros((n, n))
    s[np.arange(n), (np.arange(n) + 1) % n] = 1.0
    return s


def fourier_vector(n: int, k: int) -> np.ndarray:
    return np.exp(2j * math.pi * k * np.arange(n) / n)


def cm(n: int, j: int, j2: int) -> np.ndarray:
    """Dense dictionary element Lambda^j * S^j2, periodic in both indices."""
    check_size(n)
    out = np.zeros((n, n), dtype=complex)
    i = np.arange(n)
    out[i, (i + j2) % n] = np.exp(2j * math.pi * j * i / n)
    return out


def window_guard(n: int, k1: int, k2: int):
    """Alias-free window: both cutoffs below floor((n-1)/2)/2."""
    lim = ((n - 1) // 2) / 2.0
    if not (k1 < lim and k2 < lim):
        raise PreconditionError(
            f"window ({k1},{k2}) too large for n={n}; need < {lim}"
        )


class CirculantElement:
    """Finite combination of dictionary elements, coefficients in plain coords.

    coeffs has shape (2*k1+1, 2*k2+1); entry [j + k1, j2 + k2] multiplies the
    element with time frequency j and band offset j2.
    """

    def __init__(self, n: int, k1: int, k2: int, coeffs):
        check_size(n)
        if k1 < 0 or k2 < 0:
            raise ConfigurationError("window sizes must be nonnegative")
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != (2 * k1 + 1, 2 * k2 + 1):
            raise ConfigurationError(
                f"coefficient table shape {c.shape} does not match window ({k1},{k2})"
            )
        self.n = n
        self.k1 = k1
        self.k2 = k2
        self.coeffs = c

    @classmethod
    def zero(cls, n: int, k1: int, k2: int) -> "CirculantElement":
        return cls(n, k1, k2, np.zeros((2 * k1 + 1, 2 * k2 + 1), dtype=complex))

    @classmethod
    def basis(cls, n: int, j: int, j2: int) -> "CirculantElement":
        el = cls.zero(n, abs(j), abs(j2))
        el.coeffs[j + el.k1, j2 + el.k2] = 1.0
        return el

    @classmethod
    def from_matrix(cls, a, k1: int, k2: int) -> "CirculantElement":
        """Orthogonal projection of a dense matrix onto the window."""
        a = np.asarray(a, dtype=complex)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ConfigurationError("matrix must be square")
        if 2 * k1 + 1 > n or 2 * k2 + 1 > n:
            raise PreconditionError("window exceeds matrix size")
        el = cls.zero(n, k1, k2)
        i = np.arange(n)
        for j2 in range(-k2, k2 + 1):
            diag = a[i, (i + j2) % n]
            for j in range(-k1, k1 + 1):
                phase = np.exp(-2j * math.pi * j * i / n)
                el.coeffs[j + k1, j2 + k2] = diag @ phase / n
        return el

    def coeff(self, j: int, j2: int) -> complex:
        if abs(j) <= self.k1 and abs(j2) <= self.k2:
            return complex(self.coeffs[j + self.k1, j2 + self.k2])
        return 0.0 + 0.0j

    def iter_support(self):
        for j in range(-self.k1, self.k1 + 1):
            for j2 in range(-self.k2, self.k2 + 1):
                c = self.coeffs[j + self.k1, j2 + self.k2]
                if c != 0.0:
                    yield j, j2, c

    def to_matrix(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=complex)
        i = np.arange(self.n)
        for j2 in range(-self.k2, self.k2 + 1):
            col = np.zeros(self.n, dtype=complex)
            for j in range(-self.k1, self.k1 + 1):
                c = self.coeffs[j + self.k1, j2 + self.k2]
                if c != 0.0:
                    col = col + c * np.exp(2j * math.pi * j * i / self.n)
            if np.any(col != 0.0):
                out[i, (i + j2) % self.n] += col
        return out

    @property
    def frob_sq(self) -> float:
        # dictionary elements are orthogonal with squared norm n
        return float(self.n * np.sum(np.abs(self.coeffs) ** 2))

    def frob(self) -> float:
        return math.sqrt(self.frob_sq)

    def pad(self, k1: int, k2: int) -> "CirculantElement":
        if k1 < self.k1 or k2 < self.k2:
            raise RangeError("pad target window smaller than current support")
        out = CirculantElement.zero(self.n, k1, k2)
        out.coeffs[
            k1 - self.k1 : k1 + self.k1 + 1, k2 - self.k2 : k2 + self.k2 + 1
        ] = self.coeffs
        return out

    def __add__(self, other: "CirculantElement") -> "CirculantElement":
        self._check_peer(other)
        k1, k2 = max(self.k1, other.k1), max(self.k2, other.k2)
        out = self.pad(k1, k2)
        out.coeffs = out.coeffs + other.pad(k1, k2).coeffs
        return out

    def __sub__(self, other: "CirculantElement") -> "CirculantElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "CirculantElement":
        return CirculantElement(self.n, self.k1, self.k2, scalar * self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, CirculantElement):
            return self.__rmul__(other)
        self._check_peer(other)
        k1, k2 = self.k1 + other.k1, self.k2 + other.k2
        if 2 * k2 >= self.n or 2 * k1 >= self.n:
            raise PreconditionError("product window would alias modulo n")
        out = CirculantElement.zero(self.n, k1, k2)
        for j1, j1p, a in self.iter_support():
            for j2, j2p, b in other.iter_support():
                phase = lambda_phase(self.n, j1p * j2)
                out.coeffs[j1 + j2 + k1, j1p + j2p + k2] += a * b * phase
        return out

    def adjoint(self) -> "CirculantElement":
        out = CirculantElement.zero(self.n, self.k1, self.k2)
        for j, j2, c in self.iter_support():
            out.coeffs[-j + self.k1, -j2 + self.k2] = np.conj(c) * lambda_phase(
                self.n, j * j2
            )
        return out

    def transpose_elem(self) -> "CirculantElement":
        out = CirculantElement.zero(self.n, self.k1, self.k2)
        for j, j2, c in self.iter_support():
            out.coeffs[j + self.k1, -j2 + self.k2] = c * lambda_phase(self.n, -j * j2)
        return out

    def inner(self, other: "CirculantElement") -> complex:
        """Frobenius inner product <A, B> = tr(B* A) in coefficient space."""
        self._check_peer(other)
        k1, k2 = max(self.k1, other.k1), max(self.k2, other.k2)
        a = self.pad(k1, k2).coeffs
        b = other.pad(k1, k2).coeffs
        return complex(self.n * np.sum(a * np.conj(b)))

    def _check_peer(self, other: "CirculantElement"):
        if self.n != other.n:
            raise ConfigurationError("elements live on different sizes")


@dataclass
class FourierFunction:
    """Trig polynomial sum a[j,j2] exp(2 pi i j u) exp(i j2 x) on the rectangle.

    Carries the ambient size n because its norm is the scaled L2 norm in
    which the matrix-to-function map is an isometry.
    """

    n: int
    k1: int
    k2: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * self.k1 + 1, 2 * self.k2 + 1):
            raise ConfigurationError("coefficient table shape mismatch")
        self.coeffs = c

    @classmethod
    def zero(cls, n: int, k1: int, k2: int) -> "FourierFunction":
        return cls(n, k1, k2, np.zeros((2 * k1 + 1, 2 * k2 + 1), dtype=complex))

    def coeff(self, j: int, j2: int) -> complex:
        if abs(j) <= self.k1 and abs(j2) <= self.k2:
            return complex(self.coeffs[j + self.k1, j2 + self.k2])
        return 0.0 + 0.0j

    def eval(self, u, x):
        u = np.asarray(u, dtype=float)
        x = np.asarray(x, dtype=float)
        out = np.zeros(np.broadcast(u, x).shape, dtype=complex)
        for j in range(-self.k1, self.k1 + 1):
            for j2 in range(-self.k2, self.k2 + 1):
                c = self.coeffs[j + self.k1, j2 + self.k2]
                if c != 0.0:
                    out = out + c * np.exp(2j * math.pi * j * u + 1j * j2 * x)
        return out

    @property
    def l2n_sq(self) -> float:
        """Squared norm under (n / 2 pi) * the rectangle L2 inner product."""
        return float(self.n * np.sum(np.abs(self.coeffs) ** 2))

    def pad(self, k1: int, k2: int) -> "FourierFunction":
        if k1 < self.k1 or k2 < self.k2:
            raise RangeError("pad target window smaller than current support")
        out = FourierFunction.zero(self.n, k1, k2)
        out.coeffs[
            k1 - self.k1 : k1 + self.k1 + 1, k2 - self.k2 : k2 + self.k2 + 1
        ] = self.coeffs
        return out

    def __mul__(self, other: "FourierFunction") -> "FourierFunction":
        if self.n != other.n:
            raise ConfigurationError("functions live on different sizes")
        k1, k2 = self.k1 + other.k1, self.k2 + other.k2
        out = FourierFunction.zero(self.n, k1, k2)
        for j1 in range(-self.k1, self.k1 + 1):
            for j1p in range(-self.k2, self.k2 + 1):
                a = self.coeffs[j1 + self.k1, j1p + self.k2]
                if a == 0.0:
                    continue
                out.coeffs[
                    j1 + k1 - other.k1 : j1 + k1 + other.k1 + 1,
                    j1p + k2 - other.k2 : j1p + k2 + other.k2 + 1,
                ] += a * other.coeffs
        return out

    def __sub__(self, other: "FourierFunction") -> "FourierFunction":
        k1, k2 = max(self.k1, other.k1), max(self.k2, other.k2)
        out = self.pad(k1, k2)
        out.coeffs = out.coeffs - other.pad(k1, k2).coeffs
        return out


def _sym_phase_table(n: int, k1: int, k2: int) -> np.ndarray:
    """exp(i pi j j2 / n) over the window, the plain-to-symmetric rotation."""
    j = np.arange(-k1, k1 + 1)[:, None]
    j2 = np.arange(-k2, k2 + 1)[None, :]
    return np.exp(1j * math.pi * j * j2 / n)


@dataclass
class PsiMap:
    """Coefficient relabeling between matrix space and the trig system.

    forward sends a matrix-side element to the function with the same table;
    in the symmetric convention the table is rotated by exp(-i pi j j2 / n)
    first, so that real symmetric matrices pair with real functions.
    """

    n: int
    k1: int
    k2: int
    convention: str = "plain"

    def __post_init__(self):
        if self.convention not in ("plain", "symmetric"):
            raise ConfigurationError("convention must be 'plain' or 'symmetric'")

    def _phase(self):
        return _sym_phase_table(self.n, self.k1, self.k2)

    def forward(self, elem: CirculantElement) -> FourierFunction:
        if elem.n != self.n:
            raise ConfigurationError("element size does not match map")
        if elem.k1 > self.k1 or elem.k2 > self.k2:
            raise RangeError("element support exceeds map window")
        table = elem.pad(self.k1, self.k2).coeffs
        if self.convention == "symmetric":
            table = table / self._phase()
        return FourierFunction(self.n, self.k1, self.k2, table)

    def inverse(self, fn: FourierFunction) -> CirculantElement:
        if fn.n != self.n:
            raise ConfigurationError("function size does not match map")
        if fn.k1 > self.k1 or fn.k2 > self.k2:
            # allow oversize containers as long as actual support fits
            for j in range(-fn.k1, fn.k1 + 1):
                for j2 in range(-fn.k2, fn.k2 + 1):
                    if fn.coeff(j, j2) != 0.0 and (abs(j) > self.k1 or abs(j2) > self.k2):
                        raise RangeError("function support exceeds map window")
            fn = _truncate_fn(fn, self.k1, self.k2)
        table = fn.pad(self.k1, self.k2).coeffs.copy()
        if self.convention == "symmetric":
            table = table * self._phase()
        return CirculantElement(self.n, self.k1, self.k2, table)


def _truncate_fn(fn: FourierFunction, k1: int, k2: int) -> FourierFunction:
    out = FourierFunction.zero(fn.n, k1, k2)
    for j in range(-k1, k1 + 1):
        for j2 in range(-k2, k2 + 1):
            out.coeffs[j + k1, j2 + k2] = fn.coeff(j, j2)
    return out


def psi_forward(elem: CirculantElement, convention: str = "plain") -> FourierFunction:
    return PsiMap(elem.n, elem.k1, elem.k2, convention).forward(elem)


def psi_inverse(fn: FourierFunction, convention: str = "plain") -> CirculantElement:
    return PsiMap(fn.n, fn.k1, fn.k2, convention).inverse(fn)


def hom_defect(a: CirculantElement, b: CirculantElement, convention: str = "plain"):
    """Approximate-multiplicativity defect and its closed-form bound.

    Returns (lhs, bound) with lhs the squared scaled-L2 norm of
    forward(A @ B) - forward(A) * forward(B) and bound the product-window
    estimate 4 pi^2 |A|_F^2 |B|_F^2 m^2 / n^3, where m = k2(A) * k1(B) in the
    plain convention and the symmetrized average in the symmetric one.
    """
    if a.n != b.n:
        raise ConfigurationError("elements live on different sizes")
    n = a.n
    window_guard(n, a.k1, a.k2)
    window_guard(n, b.k1, b.k2)
    lhs = _defect_norm_sq(a, b, convention)
    if convention == "plain":
        m = a.k2 * b.k1
    else:
        m = 0.5 * (a.k2 * b.k1 + a.k1 * b.k2)
    bound = 4.0 * math.pi**2 * a.frob_sq * b.frob_sq * m**2 / n**3
    return lhs, bound


def _defect_norm_sq(a: CirculantElement, b: CirculantElement, convention: str) -> float:
    """n * sum of squared defect coefficients, computed directly."""
    n = a.n
    k1, k2 = a.k1 + b.k1, a.k2 + b.k2
    defect = np.zeros((2 * k1 + 1, 2 * k2 + 1), dtype=complex)
    for j1, j1p, ca in a.iter_support():
        for j2, j2p, cb in b.iter_support():
            if convention == "plain":
                twist = lambda_phase(n, j1p * j2) - 1.0
            else:
                twist = lambda_phase(n, 0.5 * (j1p * j2 - j1 * j2p)) - 1.0
            if twist != 0.0:
                defect[j1 + j2 + k1, j1p + j2p + k2] += ca * cb * twist
    return float(n * np.sum(np.abs(defect) ** 2))


def real_function_table(n: int, idx: BasisIndex) -> FourierFunction:
    """Complex-exponential table of one real basis function."""
    nrm = basis_norm(idx)
    j, j2 = idx.j, idx.j2
    fn = FourierFunction.zero(n, j, j2)
    if idx.parity == POS:
        pieces = [(j, 0.5), (-j, 0.5)] if j else [(0, 1.0)]
    else:
        pieces = [(j, -0.5j), (-j, 0.5j)]
    xpieces = [(j2, 0.5), (-j2, 0.5)] if j2 else [(0, 1.0)]
    for jj, wt in pieces:
        for xx, wx in xpieces:
            fn.coeffs[jj + fn.k1, xx + fn.k2] += nrm * wt * wx
    return fn


def mcheck_element(n: int, idx: BasisIndex) -> np.ndarray:
    """Real symmetric image of one basis function, squared norm n/(2 pi).

    Filled directly with the cosine form of the symmetric-convention
    combination, which is exactly symmetric including wrapped entries.
    """
    check_size(n)
    nrm = basis_norm(idx)
    j, j2 = idx.j, idx.j2
    out = np.zeros((n, n))
    i = np.arange(n)
    trig = np.cos if idx.parity == POS else np.sin
    if j2 == 0:
        out[i, i] = nrm * trig(math.pi * j * 2 * i / n)
        return out
    if 2 * j2 >= n:
        raise PreconditionError("band offset too large for size")
    vals = 0.5 * nrm * trig(math.pi * j * (2 * i + j2) / n)
    out[i, (i + j2) % n] = vals
    out[(i + j2) % n, i] = vals
    return out


def mcheck_via_psi(n: int, idx: BasisIndex, tol: float = 1e-10) -> np.ndarray:
    """Same matrix through the complex combination, with a real-cast check."""
    fn = real_function_table(n, idx)
    elem = psi_inverse(fn, convention="symmetric")
    dense = elem.to_matrix()
    leak = float(np.max(np.abs(dense.imag)))
    if leak > tol:
        raise RuntimeError(f"imaginary leak {leak} above {tol} in real cast")
    return dense.real


def build_mcheck_basis(n: int, k1: int, k2: int) -> np.ndarray:
    """Stack of K orthonormal real symmetric matrices in enumeration order."""
    window_guard(n, k1, k2)
    indices = enumerate_indices(k1, k2)
    scale = math.sqrt(TWO_PI / n)
    out = np.empty((len(indices), n, n))
    for pos, idx in enumerate(indices):
        mat = scale * mcheck_element(n, idx)
        if not np.array_equal(mat, mat.T):
            raise RuntimeError("mcheck element lost exact symmetry")
        out[pos] = mat
    return out


def psi_inverse_real(n: int, coeffs: dict) -> np.ndarray:
    """Real symmetric matrix for a real-coefficient basis expansion."""
    out = np.zeros((n, n))
    for idx, c in coeffs.items():
        if c != 0.0:
            out += float(c) * mcheck_element(n, idx)
    return out


def real_expansion_to_element(n: int, coeffs: dict) -> CirculantElement:
    """Plain-coordinate element for a real basis expansion (exact algebra)."""
    k1 = max((idx.j for idx in coeffs), default=0)
    k2 = max((idx.j2 for idx in coeffs), default=0)
    psi = PsiMap(n, k1, k2, convention="symmetric")
    acc = FourierFunction.zero(n, k1, k2)
    for idx, c in coeffs.items():
        fn = real_function_table(n, idx)
        acc.coeffs += float(c) * fn.pad(k1, k2).coeffs
    return psi.inverse(acc)


def matrix_csv(mat) -> str:
    """Row-major CSV of a dense matrix, 17 significant digits."""
    mat = np.asarray(mat)
    lines = []
    for row in mat:
        cells = []
        for v in row:
            if np.iscomplexobj(mat):
                cells.append(f"{v.real:.17g}{v.imag:+.17g}j")
            else:
                cells.append(f"{float(v):.17g}")
        lines.append(",".join(cells))
    return "\r\n".join(lines) + "\r\n"
