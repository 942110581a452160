import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from shear_spectrum.model import FlowParams, Profile, jacobi_coefficients
from shear_spectrum.oracle import (
    STIELTJES_LEADING_INDEX,
    assemble_fourier_matrix,
    jacobi_truncation_eigs,
    stieltjes_pole,
    stieltjes_transform,
    truncated_spectrum,
)
from shear_spectrum.orthopoly import root_spectrum

HALF = FlowParams(k=0.5, inv_bu=0.0)
COS = Profile.cosine()

# frozen cross-module anchors (k = 0.5)
SQRT_R_HALF_0 = 0.5224984791507442
R_HALF_0 = 0.2730046607148393
R_09_1 = 0.005622379101755115


def _entry(k, s, ell, m, coeff):
    return coeff * (m * m + k * k - 1.0) / (ell * ell + k * k + s)


def test_assemble_cosine_structure():
    k, s, N = 0.5, 1.0, 6
    mat = assemble_fourier_matrix(COS, FlowParams(k=k, inv_bu=s), N)
    assert mat.shape == (2 * N + 1, 2 * N + 1)
    idx = np.arange(-N, N + 1)
    diff = idx[:, None] - idx[None, :]
    assert np.all(mat[np.abs(diff) != 1] == 0.0)
    for ell in (-2, 0, 3):
        row = ell + N
        assert mat[row, row + 1] == pytest.approx(
            _entry(k, s, ell, ell + 1, 0.5), rel=1e-15
        )
        assert mat[row, row - 1] == pytest.approx(
            _entry(k, s, ell, ell - 1, 0.5), rel=1e-15
        )


def test_assemble_shifted_diagonal():
    k, s, N = 0.5, 2.0, 5
    mat = assemble_fourier_matrix(Profile.cosine(mean=2.0),
                                  FlowParams(k=k, inv_bu=s), N)
    for ell in range(-N, N + 1):
        want = 2.0 * (ell * ell + k * k) / (ell * ell + k * k + s)
        assert mat[ell + N, ell + N] == pytest.approx(want, rel=1e-15)


def test_unstable_pair():
    est = truncated_spectrum(COS, HALF, 128)
    assert est.truncation == 128
    assert est.matrix_kind == "fourier_b"
    eigs = est.eigenvalues
    complex_ones = eigs[np.abs(eigs.imag) > 1e-6]
    assert complex_ones.size == 2
    assert np.max(np.abs(complex_ones.real)) < 1e-8
    top = complex_ones[np.argmax(complex_ones.imag)]
    assert top.imag == pytest.approx(SQRT_R_HALF_0, abs=1e-9)
    assert np.conj(top) == pytest.approx(complex_ones[np.argmin(complex_ones.imag)],
                                         abs=1e-9)
    assert est.dominant_imag == pytest.approx(SQRT_R_HALF_0, abs=1e-9)
    assert est.residuals.max() < 1e-8


def test_spectrum_symmetric_under_negation_and_conjugation():
    est = truncated_spectrum(COS, HALF, 32)
    eigs = est.eigenvalues

    def match_dist(vals):
        # sort-based alignment is unstable for near-ties, so match each
        # transformed eigenvalue to its nearest original instead
        return max(np.min(np.abs(eigs - v)) for v in vals)

    assert match_dist(-eigs) < 1e-8
    assert match_dist(np.conj(eigs)) < 1e-8


def test_stable_spectrum_real():
    est = truncated_spectrum(COS, FlowParams(k=1.5, inv_bu=1.0), 64)
    assert np.max(np.abs(est.eigenvalues.imag)) < 1e-10
    assert est.dominant_imag == 0.0


def test_agreement_improves_with_truncation():
    params = FlowParams(k=0.9, inv_bu=1.0)
    target = math.sqrt(R_09_1)
    errs = []
    for N in (32, 64, 128):
        est = truncated_spectrum(COS, params, N)
        errs.append(abs(est.dominant_imag - target))
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-8


def test_jacobi_truncation_eigs():
    co = jacobi_coefficients(HALF, 12)
    assert jacobi_truncation_eigs(co, 1) == pytest.approx([co.b(0)], abs=1e-15)
    got = jacobi_truncation_eigs(co, 12)
    assert np.all(np.diff(got) > 0.0)
    assert np.max(np.abs(got - root_spectrum(co, 12))) < 1e-9
    want = eigh_tridiagonal(co.diagonal(12), co.offdiagonal(12),
                            eigvals_only=True)
    assert np.max(np.abs(got - want)) < 1e-12


def test_stieltjes_pole_matches_negative_root():
    co = jacobi_coefficients(HALF, 600)
    pole = stieltjes_pole(co, depth=512)
    assert pole == pytest.approx(-R_HALF_0, abs=1e-9)


def test_stieltjes_leading_index_frozen():
    # the continued fraction starts at level 0; starting one level deeper
    # describes the stripped matrix, which has no negative pole
    assert STIELTJES_LEADING_INDEX == 0
    co = jacobi_coefficients(HALF, 600)
    just_below = -R_HALF_0 - 1e-4
    just_above = -R_HALF_0 + 1e-4
    m_below = stieltjes_transform(co, just_below, 512)
    m_above = stieltjes_transform(co, just_above, 512)
    assert m_below * m_above < 0.0


def test_stieltjes_no_pole_when_stable():
    co = jacobi_coefficients(FlowParams(k=1.5, inv_bu=0.0), 600)
    assert stieltjes_pole(co, depth=512) is None
