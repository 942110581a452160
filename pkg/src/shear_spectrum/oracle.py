"""Independent spectrum estimates used to cross-check the recurrence route.

Three estimators live here, deliberately built on different machinery:

* ``truncated_spectrum`` assembles the full Fourier-space generator on modes
  |l| <= N for an arbitrary even trigonometric profile and hands it to a
  dense nonsymmetric eigensolver.
* ``jacobi_truncation_eigs`` diagonalizes the symmetric tridiagonal
  truncation directly (LAPACK), bypassing the Sturm bisection path.
* ``stieltjes_pole`` locates the isolated negative eigenvalue as the pole of
  the resolvent's continued-fraction expansion.

Agreement between these and the recurrence solver is asserted in the tests;
none of them share code with the solver beyond coefficient construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import EigensolverFailure
from .model import FlowParams, JacobiCoefficients, Profile

__all__ = [
    "SpectrumEstimate",
    "assemble_fourier_matrix",
    "truncated_spectrum",
    "jacobi_truncation_eigs",
    "stieltjes_transform",
    "stieltjes_pole",
    "STIELTJES_LEADING_INDEX",
]

MatrixKind = Literal["fourier_b", "jacobi_a"]

# The continued fraction below starts at coefficient index 0 (leading term
# z - b_0, first coupling a_0^2).  Starting one level deeper describes the
# first-row-and-column-deleted matrix, whose spectrum is nonnegative here,
# so only the index-0 convention reproduces the negative eigenvalue; this
# was fixed empirically and is pinned by a regression test.
STIELTJES_LEADING_INDEX = 0

_RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class SpectrumEstimate:
    """Eigenvalues of one finite truncation, with per-pair residuals."""

    eigenvalues: np.ndarray
    truncation: int
    matrix_kind: MatrixKind
    residuals: np.ndarray = field(repr=False)

    @property
    def dominant_imag(self) -> float:
        """Largest imaginary part over the estimate (0 for a real spectrum)."""
        return float(np.max(self.eigenvalues.imag))


def assemble_fourier_matrix(
    profile: Profile, params: FlowParams, N: int
) -> np.ndarray:
    """Generator matrix on Fourier modes l, m in -N..N.

    Entry (l, m) is

        ( uhat(l-m) (m^2 + k^2) - (l-m)^2 uhat(l-m) ) / (l^2 + k^2 + 1/Bu),

    the convolution form of the eigenvalue relation.  For the pure cosine
    profile only |l-m| = 1 contributes and the matrix is tridiagonal with a
    zero diagonal.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    k2 = params.k * params.k
    ells = np.arange(-N, N + 1, dtype=float)
    diff = ells[:, None] - ells[None, :]
    uh = np.zeros_like(diff)
    for d in range(profile.degree + 1):
        uh[np.abs(diff) == d] = profile.u_hat(d)
    m2 = ells[None, :] ** 2
    mat = uh * ((m2 + k2) - diff**2)
    mat /= (ells[:, None] ** 2 + k2 + params.inv_bu)
    return mat


def truncated_spectrum(
    profile: Profile, params: FlowParams, N: int
) -> SpectrumEstimate:
    """Dense eigensolve of the order-(2N+1) Fourier truncation.

    Raises
    ------
    EigensolverFailure
        If LAPACK does not converge or any eigenpair residual exceeds 1e-8.
    """
    mat = assemble_fourier_matrix(profile, params, N)
    try:
        vals, vecs = np.linalg.eig(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(f"dense eigensolve failed at N={N}: {exc}") from exc
    resid = np.linalg.norm(mat @ vecs - vecs * vals[None, :], axis=0)
    resid /= np.linalg.norm(vecs, axis=0)
    scale = max(float(np.linalg.norm(mat, np.inf)), 1.0)
    if np.max(resid) > _RESIDUAL_LIMIT * scale:
        raise EigensolverFailure(
            f"eigenpair residual {np.max(resid):.3e} exceeds limit at N={N}"
        )
    order = np.lexsort((vals.real, -vals.imag))
    return SpectrumEstimate(
        eigenvalues=vals[order],
        truncation=N,
        matrix_kind="fourier_b",
        residuals=resid[order],
    )


def jacobi_truncation_eigs(coeffs: JacobiCoefficients, n: int) -> np.ndarray:
    """Eigenvalues of the order-n tridiagonal truncation, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    diag = coeffs.diagonal(n)
    if n == 1:
        return diag
    off = coeffs.offdiagonal(n)
    try:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK hiccup
        raise EigensolverFailure(f"tridiagonal solve failed at n={n}: {exc}") from exc
    return np.sort(vals)


def stieltjes_transform(coeffs: JacobiCoefficients, z: float, depth: int) -> float:
    """Depth-limited continued fraction for <e_0, (T - z)^{-1} e_0>.

    Evaluated bottom-up:

        m(z) = -1 / (z - b_0 + a_0^2 [ -1 / (z - b_1 + a_1^2 [ ... ]) ])

    Division by a vanishing denominator is allowed to produce IEEE infinities,
    which propagate through the next level as an exact zero tail.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    coeffs.ensure(depth + STIELTJES_LEADING_INDEX + 1)
    diag = coeffs.diagonal(depth + STIELTJES_LEADING_INDEX)
    off = coeffs.offdiagonal(depth + STIELTJES_LEADING_INDEX + 1)
    t = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        for j in range(depth - 1 + STIELTJES_LEADING_INDEX,
                       STIELTJES_LEADING_INDEX - 1, -1):
            t = -1.0 / (z - diag[j] + off[j] * off[j] * t)
    return float(t)


def stieltjes_pole(
    coeffs: JacobiCoefficients,
    depth: int = 512,
    bracket: tuple[float, float] = (-1.0, -1e-12),
) -> float | None:
    """Pole of the resolvent transform inside ``bracket``, or None.

    The reciprocal 1/m(z) changes sign exactly once across the isolated
    negative eigenvalue and is positive below it, so a sign-change bisection
    suffices.  Absence of a sign change in the bracket means the truncated
    spectrum has no negative point there.
    """
    lo, hi = bracket
    if not lo < hi < 0.0:
        raise ValueError("bracket must satisfy lo < hi < 0")

    def recip(zval: float) -> float:
        m = stieltjes_transform(coeffs, zval, depth)
        return 1.0 / m if m != 0.0 else np.inf

    flo, fhi = recip(lo), recip(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0.0:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = recip(mid)
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)
