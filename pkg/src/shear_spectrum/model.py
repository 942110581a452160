"""Flow parameters, background profiles, and recurrence coefficients.

The stability problem for a zonal shear u(y) on a 2*pi-periodic channel,
written in Fourier space, couples the coefficients of a candidate mode
through a tridiagonal relation.  For the cosine profile that relation is
equivalent to a half-infinite symmetric tridiagonal (Jacobi) matrix whose
entries derive from the sequence

    zeta_j = (1/2) * sqrt( ((j^2+k^2-1) ((j+1)^2+k^2-1))
                         / ((j^2+k^2+s) ((j+1)^2+k^2+s)) ),   s = 1/Bu,

with diagonal b_0 = 2 zeta_0^2 + zeta_1^2, b_j = zeta_{2j}^2 + zeta_{2j+1}^2
for j >= 1 and off-diagonal a_j = zeta_{2j+1} zeta_{2j+2}.  Everything here
is real: zeta_0 may be imaginary (its square is then negative) but only its
square enters the diagonal.

This module owns those sequences plus the small helper factors ``qhat`` and
``weight`` used when mapping eigenvectors back to Fourier coefficients.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FlowParams",
    "Profile",
    "JacobiCoefficients",
    "jacobi_coefficients",
    "zeta",
    "qhat",
    "weight",
    "weight_is_zero",
]


@dataclass(frozen=True)
class FlowParams:
    """Along-channel wavenumber ``k`` and inverse Burger number ``inv_bu``.

    ``inv_bu`` stores 1/Bu so that the non-rotating limit Bu = infinity is
    represented exactly by 0.0.
    """

    k: float
    inv_bu: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise ValueError(f"k must be finite and positive, got {self.k!r}")
        if not (math.isfinite(self.inv_bu) and self.inv_bu >= 0.0):
            raise ValueError(
                f"inv_bu must be finite and nonnegative, got {self.inv_bu!r}"
            )


class Profile:
    """A real even trigonometric polynomial background flow.

    The flow is stored through its Fourier coefficients uhat(l) for
    l = 0..degree, with uhat(-l) = uhat(l) implied, i.e.

        u(y) = uhat(0) + sum_{l>=1} 2 uhat(l) cos(l y).

    Coefficients must be real, which keeps u real and symmetric in y.
    """

    __slots__ = ("_half",)

    def __init__(self, half_spectrum) -> None:
        half = np.asarray(half_spectrum, dtype=float)
        if half.ndim != 1 or half.size == 0:
            raise ValueError("half_spectrum must be a nonempty 1-d real array")
        if not np.all(np.isfinite(half)):
            raise ValueError("profile coefficients must be finite")
        half = half.copy()
        half.setflags(write=False)
        object.__setattr__(self, "_half", half)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("Profile is immutable")

    @classmethod
    def cosine(cls, mean: float = 0.0) -> "Profile":
        """u(y) = cos(y) + mean, i.e. uhat(+-1) = 1/2, uhat(0) = mean."""
        return cls([mean, 0.5])

    @property
    def degree(self) -> int:
        return self._half.size - 1

    def u_hat(self, ell: int) -> float:
        """Fourier coefficient at integer mode ``ell`` (symmetric in sign)."""
        ell = abs(int(ell))
        if ell > self.degree:
            return 0.0
        return float(self._half[ell])

    def value(self, y) -> np.ndarray | float:
        y = np.asarray(y, dtype=float)
        ls = np.arange(1, self._half.size)
        out = self._half[0] + 2.0 * np.cos(np.multiply.outer(y, ls)) @ self._half[1:]
        return out if out.ndim else float(out)

    def second_derivative(self, y) -> np.ndarray | float:
        y = np.asarray(y, dtype=float)
        ls = np.arange(1, self._half.size)
        coef = -(ls.astype(float) ** 2) * self._half[1:]
        out = 2.0 * np.cos(np.multiply.outer(y, ls)) @ coef
        return out if out.ndim else float(out)

    def max_abs(self, samples: int = 8192) -> float:
        """max_y |u(y)|, by dense sampling plus one parabolic refinement."""
        y = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
        vals = np.abs(self.value(y))
        i = int(np.argmax(vals))
        h = 2.0 * np.pi / samples
        ym, y0, yp = y[i] - h, y[i], y[i] + h
        fm, f0, fp = (abs(self.value(t)) for t in (ym, y0, yp))
        denom = fm - 2.0 * f0 + fp
        if denom < 0.0:
            ystar = y0 + 0.5 * h * (fm - fp) / denom
            return float(max(f0, abs(self.value(ystar))))
        return float(f0)

    def value_range(self, samples: int = 8192) -> tuple[float, float]:
        y = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
        vals = self.value(y)
        return float(np.min(vals)), float(np.max(vals))

    def __repr__(self) -> str:
        return f"Profile(half_spectrum={self._half.tolist()!r})"


def _zeta_squared(params: FlowParams, j: np.ndarray) -> np.ndarray:
    """zeta_j^2, always real; negative only at j = 0 when k < 1."""
    k2 = params.k * params.k
    s = params.inv_bu
    jf = j.astype(float)
    num = (jf * jf + k2 - 1.0) * ((jf + 1.0) ** 2 + k2 - 1.0)
    den = (jf * jf + k2 + s) * ((jf + 1.0) ** 2 + k2 + s)
    return 0.25 * num / den


def _zeta_array(params: FlowParams, count: int) -> np.ndarray:
    """zeta_0 .. zeta_{count-1} as complex128, principal branch.

    Negative squares map to +i sqrt(|.|), matching the principal complex
    square root; nonnegative squares stay exactly real.
    """
    zsq = _zeta_squared(params, np.arange(count))
    out = np.empty(count, dtype=complex)
    neg = zsq < 0.0
    out[~neg] = np.sqrt(zsq[~neg])
    out[neg] = 1j * np.sqrt(-zsq[neg])
    return out


def zeta(params: FlowParams, j: int) -> complex:
    """The product factor zeta_j = qhat(j) * qhat(j+1) in closed form.

    Parameters
    ----------
    params : FlowParams
    j : int
        Nonnegative factor index.

    Returns
    -------
    complex
        Real for j >= 1 or k >= 1; purely imaginary with positive
        imaginary part at j = 0 when k < 1.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    return complex(_zeta_array_slice(params, j))


def _zeta_array_slice(params: FlowParams, j: int) -> complex:
    zsq = float(_zeta_squared(params, np.array([j]))[0])
    if zsq < 0.0:
        return 1j * math.sqrt(-zsq)
    return complex(math.sqrt(zsq))


def qhat(params: FlowParams, ell: int) -> complex:
    """(1/sqrt(2)) * ((l^2+k^2-1)/(l^2+k^2+1/Bu))^(1/2), principal branch."""
    k2 = params.k * params.k
    ratio = (ell * ell + k2 - 1.0) / (ell * ell + k2 + params.inv_bu)
    return cmath.sqrt(ratio) / math.sqrt(2.0)


def weight(params: FlowParams, ell: int) -> complex:
    """Diagonal factor (l^2+k^2-1)^(1/2) (l^2+k^2+1/Bu)^(1/2).

    Returns exactly 0 when l^2 + k^2 = 1, the one configuration where the
    factor degenerates and cannot be divided out; see ``weight_is_zero``.
    """
    k2 = params.k * params.k
    first = ell * ell + k2 - 1.0
    second = ell * ell + k2 + params.inv_bu
    return cmath.sqrt(complex(first)) * math.sqrt(second)


def weight_is_zero(params: FlowParams, ell: int) -> bool:
    """True when weight(params, ell) degenerates to zero (l^2 + k^2 = 1)."""
    return ell * ell + params.k * params.k == 1.0


class JacobiCoefficients:
    """Cached, extendable recurrence coefficients for one parameter point.

    Extension appends to internal arrays under a lock and never recomputes an
    existing prefix, so values already handed out stay bitwise stable and
    concurrent readers see a consistent prefix.  ``a(j)`` and ``b(j)`` are
    formed from the cached zeta values, not re-derived from scratch.
    """

    def __init__(self, params: FlowParams) -> None:
        self.params = params
        self._lock = threading.Lock()
        self._z = _zeta_array(params, 4)  # covers a_0, b_0, b_1
        self._a, self._b = self._derive(self._z)

    @staticmethod
    def _derive(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        zsq = (z * z).real  # exact: imaginary zeta squares to a real number
        npairs = (z.size - 2) // 2
        b = np.empty(npairs + 1)
        b[0] = 2.0 * zsq[0] + zsq[1]
        jj = np.arange(1, npairs + 1)
        b[1:] = zsq[2 * jj] + zsq[2 * jj + 1]
        a = (z[2 * np.arange(npairs) + 1] * z[2 * np.arange(npairs) + 2]).real
        return a, b

    @property
    def n_materialized(self) -> int:
        """Largest n with a_0..a_{n-1} and b_0..b_n available."""
        return self._a.size

    def ensure(self, n: int) -> None:
        """Materialize a_0..a_{n-1} and b_0..b_n (no-op if already there)."""
        if n < 1:
            raise ValueError("n must be >= 1")
        if self._a.size >= n:
            return
        with self._lock:
            if self._a.size >= n:
                return
            need = 2 * n + 2  # zeta_0 .. zeta_{2n+1}
            old = self._z
            grown = _zeta_array(self.params, need)
            grown[: old.size] = old  # keep prefix bitwise identical
            a, b = self._derive(grown)
            a[: self._a.size] = self._a
            b[: self._b.size] = self._b
            self._z, self._a, self._b = grown, a, b

    def z(self, j: int) -> complex:
        if j < 0:
            raise ValueError("j must be nonnegative")
        if j >= self._z.size:
            self.ensure((j + 1) // 2 + 1)
        return complex(self._z[j])

    def a(self, j: int) -> float:
        self.ensure(j + 1)
        return float(self._a[j])

    def b(self, j: int) -> float:
        self.ensure(max(j, 1))
        return float(self._b[j])

    def diagonal(self, n: int) -> np.ndarray:
        """b_0 .. b_{n-1} as a fresh array."""
        self.ensure(n)
        return self._b[:n].copy()

    def offdiagonal(self, n: int) -> np.ndarray:
        """a_0 .. a_{n-2} as a fresh array (empty for n = 1)."""
        self.ensure(n)
        return self._a[: n - 1].copy()

    def gershgorin_bound(self, n: int) -> float:
        """max_j (|b_j| + |a_j| + |a_{j-1}|) over the first n rows.

        Every eigenvalue of every truncation of order <= n lies inside
        [-bound, bound]; the |a_j| term past the truncation edge only
        widens the interval.
        """
        self.ensure(n)
        babs = np.abs(self._b[:n])
        aabs = np.abs(self._a[:n])
        rows = babs + aabs
        rows[1:] += aabs[: n - 1]
        return float(np.max(rows))

    def __repr__(self) -> str:
        return (
            f"JacobiCoefficients(params={self.params!r}, "
            f"n_materialized={self.n_materialized})"
        )


def jacobi_coefficients(params: FlowParams, n: int) -> JacobiCoefficients:
    """Build coefficients with a_0..a_{n-1} and b_0..b_n materialized."""
    coeffs = JacobiCoefficients(params)
    coeffs.ensure(max(n, 1))
    return coeffs
