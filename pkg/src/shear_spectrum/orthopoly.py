"""Root counting and isolation for the truncated recurrence.

The characteristic polynomials p_n of the half-infinite tridiagonal matrix
satisfy p_{-1} = 0, p_0 = 1 and

    x p_n = a_n p_{n+1} + b_n p_n + a_{n-1} p_{n-1},

so the roots of p_n are the eigenvalues of the order-n truncation.  Rather
than evaluating p_n (which over/underflows quickly), everything here runs on
the Sturm pivot sequence of the shifted truncation: the number of negative
pivots of T_n - x I equals the number of eigenvalues strictly below x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MultipleNegativeRoots
from .model import JacobiCoefficients

__all__ = [
    "SturmCount",
    "NegativeRootTrace",
    "sturm_count",
    "negative_root",
    "trace_negative_roots",
    "root_spectrum",
    "ratio_asymptote",
    "ratio_limit",
]

_MAX_BISECT = 200
_SPECTRUM_CAP = 64


@dataclass(frozen=True)
class SturmCount:
    """Result of one pivot sweep: eigenvalues of T_n strictly below x."""

    x: float
    count_below: int
    sequence_length: int


@dataclass(frozen=True)
class NegativeRootTrace:
    """Magnitudes r_n of the negative root across truncation orders.

    Orders where the truncation has no negative root are simply omitted;
    ``n_values`` and ``roots`` stay aligned.  ``r_limit`` is set only once a
    doubling pass has converged.
    """

    n_values: tuple[int, ...]
    roots: tuple[float, ...]
    converged: bool = False
    r_limit: float | None = None


def _count_below(diag: np.ndarray, off: np.ndarray, x: float, scale: float) -> int:
    # zero pivots are nudged negative, counting an exact eigenvalue hit as
    # "below"; the nudge is deterministic so bisection stays reproducible
    eps = np.finfo(float).eps
    d = diag[0] - x
    if d == 0.0:
        d = -eps * scale
    count = 1 if d < 0.0 else 0
    for i in range(1, diag.size):
        d = (diag[i] - x) - off[i - 1] * off[i - 1] / d
        if d == 0.0:
            d = -eps * scale
        if d < 0.0:
            count += 1
    return count


def _pivot_scale(diag: np.ndarray, off: np.ndarray) -> float:
    s = float(np.max(np.abs(diag)))
    if off.size:
        s = max(s, float(np.max(np.abs(off))))
    return s if s > 0.0 else 1.0


def sturm_count(coeffs: JacobiCoefficients, n: int, x: float) -> SturmCount:
    """Count eigenvalues of the order-n truncation strictly below ``x``.

    Parameters
    ----------
    coeffs : JacobiCoefficients
    n : int
        Truncation order, at least 1.
    x : float
        Shift at which the pivot sequence is evaluated.

    Returns
    -------
    SturmCount
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    diag = coeffs.diagonal(n)
    off = coeffs.offdiagonal(n)
    count = _count_below(diag, off, x, _pivot_scale(diag, off))
    return SturmCount(x=x, count_below=count, sequence_length=n)


def _snapped_bracket(coeffs: JacobiCoefficients, n: int) -> float:
    # rounding the Gershgorin bound up to a power of two keeps the bisection
    # lattice identical across n, so traces of r_n inherit the exact
    # monotonicity of the underlying roots instead of +-tol jitter
    g = coeffs.gershgorin_bound(n)
    return float(2.0 ** math.ceil(math.log2(g))) if g > 0.0 else 1.0


def _bisect_count(
    diag: np.ndarray,
    off: np.ndarray,
    scale: float,
    lo: float,
    hi: float,
    target: int,
    tol: float,
) -> float:
    """Shrink [lo, hi] around the point where count_below reaches ``target``."""
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi or (hi - lo) < tol:
            break
        if _count_below(diag, off, mid, scale) >= target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def negative_root(
    coeffs: JacobiCoefficients, n: int, tol: float = 1e-12
) -> float | None:
    """Magnitude of the unique negative eigenvalue of the order-n truncation.

    Returns None when the truncation has no negative eigenvalue (possible at
    small n even for unstable parameters, and always for k >= 1).

    Raises
    ------
    MultipleNegativeRoots
        If more than one eigenvalue lies below zero, which contradicts the
        structure of the problem and indicates bad inputs.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    diag = coeffs.diagonal(n)
    off = coeffs.offdiagonal(n)
    scale = _pivot_scale(diag, off)
    below = _count_below(diag, off, 0.0, scale)
    if below == 0:
        return None
    if below > 1:
        raise MultipleNegativeRoots(
            f"{below} eigenvalues below zero at truncation order {n}"
        )
    lo = -_snapped_bracket(coeffs, n)
    root = _bisect_count(diag, off, scale, lo, 0.0, 1, tol)
    return -root


def trace_negative_roots(
    coeffs: JacobiCoefficients, n_values, tol: float = 1e-12
) -> NegativeRootTrace:
    """negative_root across several truncation orders, skipping absences."""
    ns, roots = [], []
    for n in n_values:
        r = negative_root(coeffs, int(n), tol)
        if r is not None:
            ns.append(int(n))
            roots.append(r)
    return NegativeRootTrace(n_values=tuple(ns), roots=tuple(roots))


def root_spectrum(
    coeffs: JacobiCoefficients, n: int, tol: float = 1e-13
) -> np.ndarray:
    """All n eigenvalues of the order-n truncation, strictly ascending.

    Intended for small truncations (n <= 64); each root costs a full
    bisection, so larger orders should go through the dense oracle instead.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > _SPECTRUM_CAP:
        raise ValueError(f"root_spectrum is capped at n = {_SPECTRUM_CAP}")
    diag = coeffs.diagonal(n)
    off = coeffs.offdiagonal(n)
    scale = _pivot_scale(diag, off)
    bound = _snapped_bracket(coeffs, n)
    out = np.empty(n)
    for i in range(1, n + 1):
        out[i - 1] = _bisect_count(diag, off, scale, -bound, bound, i, tol)
    return out


def ratio_asymptote(coeffs: JacobiCoefficients, z: float, n: int) -> float:
    """Ratio p_n(z)/p_{n-1}(z) of successive recurrence polynomials.

    Evaluated iteratively through rho_1 = (z - b_0)/a_0 and

        rho_m = (z - b_{m-1})/a_{m-1} - (a_{m-2}/a_{m-1}) / rho_{m-1},

    which avoids forming the exponentially growing p_n themselves.  For real
    z outside the spectrum the ratio approaches the magnitude-greater-than-one
    root of the constant-coefficient limit recurrence; see ``ratio_limit``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    diag = coeffs.diagonal(n)
    off = coeffs.offdiagonal(n + 1)  # a_0 .. a_{n-1}
    rho = (z - diag[0]) / off[0]
    for m in range(2, n + 1):
        rho = (z - diag[m - 1]) / off[m - 1] - (off[m - 2] / off[m - 1]) / rho
    return float(rho)


def ratio_limit(z: float, b_limit: float = 0.5, a_limit: float = 0.25) -> float:
    """Limit of p_n(z)/p_{n-1}(z) for constant tail coefficients.

    The limiting recurrence a rho^2 - (z - b) rho + a = 0 has two roots with
    product one; the polynomial ratio follows the root of magnitude greater
    than one.  For z = -2 with the default tail this is (-10 - sqrt(96))/2.
    """
    u = (z - b_limit) / a_limit
    disc = math.sqrt(u * u - 4.0) if u * u >= 4.0 else 0.0
    r_plus = 0.5 * (u + disc)
    r_minus = 0.5 * (u - disc)
    return r_plus if abs(r_plus) >= abs(r_minus) else r_minus
