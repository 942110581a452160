"""Growth rates and eigenfunctions from the truncated recurrence.

The wave speed c of an unstable mode satisfies c^2 = -r, where -r is the
unique negative eigenvalue of the half-infinite tridiagonal matrix built in
``model``.  Truncations approach r monotonically from below, so each finite
order yields a certified lower bound k*sqrt(r_n) on the growth rate, and the
doubling ladder in ``solve_dispersion`` stops once successive bounds agree.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import MultipleNegativeRoots, NoRootAtNmax, ResidualTooLarge
from .model import FlowParams, JacobiCoefficients, jacobi_coefficients, weight
from .orthopoly import NegativeRootTrace, negative_root

__all__ = [
    "DispersionPoint",
    "Eigenfunction",
    "solve_dispersion",
    "sweep",
    "growth_lower_bound",
    "reconstruct_eigenfunction",
]

_LADDER_START = 4
_THREADS_ENV = "SHEAR_SPECTRUM_THREADS"


@dataclass(frozen=True)
class DispersionPoint:
    """Stability verdict for one (k, 1/Bu) pair.

    ``c`` holds the conjugate pair (+i sqrt(r), -i sqrt(r)) for unstable
    points and None otherwise.  ``lower_bound`` equals k*sqrt(r_n) at the
    final truncation order and is a rigorous bound on the growth rate even
    when the ladder stopped before reaching tolerance.  ``anomaly`` is set
    instead of raising only on the sweep path.
    """

    params: FlowParams
    stable: bool
    r_trace: NegativeRootTrace
    c: tuple[complex, complex] | None
    growth_rate: float
    n_used: int
    lower_bound: float
    anomaly: str | None = None


@dataclass(frozen=True)
class Eigenfunction:
    """Fourier coefficients of one unstable mode on |l| <= L.

    Normalized to unit l2 norm with the l = 1 coefficient real and positive.
    ``coeffs[i]`` is the coefficient at l = i - L.
    """

    k: float
    c: complex
    L: int
    coeffs: np.ndarray

    def coefficient(self, ell: int) -> complex:
        if abs(ell) > self.L:
            return 0.0
        return complex(self.coeffs[ell + self.L])


def solve_dispersion(
    params: FlowParams, tol: float = 1e-10, n_max: int = 16384
) -> DispersionPoint:
    """Classify one parameter point, doubling the truncation until converged.

    Parameters
    ----------
    params : FlowParams
    tol : float
        Stop once successive doublings satisfy r_{2n} - r_n < tol.
    n_max : int
        Truncation ceiling for the doubling ladder (at least 4).

    Returns
    -------
    DispersionPoint

    Raises
    ------
    NoRootAtNmax
        If k < 1 but no truncation up to n_max produced a negative root.
    """
    if n_max < _LADDER_START:
        raise ValueError(f"n_max must be >= {_LADDER_START}")
    if params.k >= 1.0:
        return DispersionPoint(
            params=params,
            stable=True,
            r_trace=NegativeRootTrace(n_values=(), roots=()),
            c=None,
            growth_rate=0.0,
            n_used=0,
            lower_bound=0.0,
        )

    coeffs = JacobiCoefficients(params)
    root_tol = min(tol * 1e-2, 1e-12)
    ns: list[int] = []
    roots: list[float] = []
    n = _LADDER_START
    prev: float | None = None
    converged = False
    while n <= n_max:
        r_n = negative_root(coeffs, n, root_tol)
        if r_n is not None:
            ns.append(n)
            roots.append(r_n)
            if prev is not None and r_n - prev < tol:
                converged = True
                break
            prev = r_n
        n *= 2

    if not roots:
        raise NoRootAtNmax(
            f"no negative root for k={params.k}, inv_bu={params.inv_bu} "
            f"up to n={n_max}"
        )

    r = roots[-1]
    trace = NegativeRootTrace(
        n_values=tuple(ns),
        roots=tuple(roots),
        converged=converged,
        r_limit=r if converged else None,
    )
    speed = 1j * math.sqrt(r)
    rate = params.k * math.sqrt(r)
    point = DispersionPoint(
        params=params,
        stable=False,
        r_trace=trace,
        c=(speed, -speed),
        growth_rate=rate,
        n_used=ns[-1],
        lower_bound=rate,
    )
    if not converged:
        point = replace(point, anomaly=f"no convergence at n_max={n_max}")
    return point


def _solve_collect(params: FlowParams, tol: float, n_max: int) -> DispersionPoint:
    try:
        return solve_dispersion(params, tol, n_max)
    except (NoRootAtNmax, MultipleNegativeRoots) as exc:
        return DispersionPoint(
            params=params,
            stable=False,
            r_trace=NegativeRootTrace(n_values=(), roots=()),
            c=None,
            growth_rate=0.0,
            n_used=0,
            lower_bound=0.0,
            anomaly=f"{type(exc).__name__}: {exc}",
        )


def _worker_cap(requested: int | None) -> int:
    env = os.environ.get(_THREADS_ENV)
    cap = None
    if env is not None:
        try:
            cap = max(1, int(env))
        except ValueError:
            cap = None
    workers = requested if requested is not None else min(8, os.cpu_count() or 1)
    if cap is not None:
        workers = min(workers, cap)
    return max(1, workers)


def sweep(
    grid: Sequence[FlowParams],
    tol: float = 1e-10,
    n_max: int = 16384,
    max_workers: int | None = None,
) -> list[DispersionPoint]:
    """solve_dispersion over a parameter grid, order preserving.

    Per-point failures are returned as points with ``anomaly`` set rather
    than aborting the sweep.  Worker threads are capped by the
    SHEAR_SPECTRUM_THREADS environment variable when present.
    """
    grid = list(grid)
    workers = _worker_cap(max_workers)
    if workers == 1 or len(grid) <= 1:
        return [_solve_collect(p, tol, n_max) for p in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda p: _solve_collect(p, tol, n_max), grid))


def growth_lower_bound(
    params: FlowParams, n: int, tol: float = 1e-12
) -> float:
    """Certified growth-rate lower bound k*sqrt(r_n) at one truncation order.

    Returns 0.0 when the order-n truncation has no negative root (which makes
    the trivial bound the only certified one).
    """
    if params.k >= 1.0:
        return 0.0
    coeffs = jacobi_coefficients(params, n)
    r_n = negative_root(coeffs, n, tol)
    if r_n is None:
        return 0.0
    return params.k * math.sqrt(r_n)


def reconstruct_eigenfunction(
    point: DispersionPoint,
    coeffs: JacobiCoefficients | None = None,
    L: int = 64,
) -> Eigenfunction:
    """Fourier coefficients of the growing mode of an unstable point.

    The recurrence eigenvector v(m) = p_m(c^2) populates the odd Fourier
    indices directly; even indices follow from the two-term relation
    u(2m) = (z_{2m} v(m) + z_{2m-1} v(m-1)) / c with u(0) = 2 z_0 v(0) / c,
    and u(-l) = u(l).  Dividing by the weight factor recovers f(l).  The
    l = 0 coefficient is genuinely nonzero: the l = 0 row of the eigenvalue
    relation reads c f(0) = k^2/(k^2 + 1/Bu) f(1), which for a nonreal c and
    nonzero f(1) cannot balance with f(0) = 0.

    Raises
    ------
    ResidualTooLarge
        If the assembled coefficients fail the tridiagonal relation at any
        row |l| < L - 1, relative tolerance 1e-8.
    """
    if point.stable or point.c is None:
        raise ValueError("eigenfunction reconstruction needs an unstable point")
    if L < 4:
        raise ValueError("L must be >= 4")
    if point.r_trace.r_limit is not None:
        r = point.r_trace.r_limit
    else:
        r = point.r_trace.roots[-1]
    params = point.params
    if coeffs is None:
        coeffs = JacobiCoefficients(params)
    half = L // 2 + 1
    coeffs.ensure(half + 1)

    x = -r
    v = np.empty(half + 1)
    v[0] = 1.0
    v[1] = (x - coeffs.b(0)) / coeffs.a(0)
    for m in range(1, half):
        v[m + 1] = ((x - coeffs.b(m)) * v[m] - coeffs.a(m - 1) * v[m - 1]) / coeffs.a(m)

    c = 1j * math.sqrt(r)
    u = np.zeros(L + 1, dtype=complex)
    for ell in range(1, L + 1, 2):
        u[ell] = v[(ell - 1) // 2]
    u[0] = 2.0 * coeffs.z(0) * v[0] / c
    for ell in range(2, L + 1, 2):
        u[ell] = (coeffs.z(ell) * v[ell // 2] + coeffs.z(ell - 1) * v[ell // 2 - 1]) / c

    w = np.array([weight(params, ell) for ell in range(L + 1)])
    if np.any(w == 0.0):
        raise ResidualTooLarge("weight factor vanishes inside the window")
    fh_half = u / w
    fh = np.concatenate([fh_half[:0:-1], fh_half])  # l = -L .. L
    fh /= np.linalg.norm(fh)
    phase = fh[L + 1]
    if phase == 0.0:
        raise ResidualTooLarge("l = 1 coefficient vanished; cannot fix phase")
    fh *= np.conj(phase) / abs(phase)

    _check_residual(fh, params, c, L)
    return Eigenfunction(k=params.k, c=c, L=L, coeffs=fh)


def _check_residual(fh: np.ndarray, params: FlowParams, c: complex, L: int) -> None:
    k2 = params.k * params.k
    s = params.inv_bu
    ells = np.arange(-(L - 1), L, dtype=float)
    idx = (ells + L).astype(int)
    upper = 0.5 * ((ells + 1.0) ** 2 + k2 - 1.0) / (ells**2 + k2 + s)
    lower = 0.5 * ((ells - 1.0) ** 2 + k2 - 1.0) / (ells**2 + k2 + s)
    res = c * fh[idx] - upper * fh[idx + 1] - lower * fh[idx - 1]
    scale = abs(c) * float(np.max(np.abs(fh)))
    worst = float(np.max(np.abs(res))) / scale
    if worst > 1e-8:
        raise ResidualTooLarge(
            f"recurrence residual {worst:.3e} exceeds 1e-8; "
            "the wave speed is likely not converged"
        )
