import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from shear_spectrum.errors import MultipleNegativeRoots
from shear_spectrum.model import FlowParams, jacobi_coefficients
from shear_spectrum.orthopoly import (
    negative_root,
    ratio_asymptote,
    ratio_limit,
    root_spectrum,
    sturm_count,
    trace_negative_roots,
)

HALF = FlowParams(k=0.5, inv_bu=0.0)

# frozen from an independent evaluation of the order-16/64 truncations
ROOT_95_1_N16 = 0.0014385187810148636
ROOT_95_1_N64 = 0.0018125815563507786
RATIO_Z2_N500 = -9.898995643968913


def test_sturm_count_anchor():
    co = jacobi_coefficients(HALF, 40)
    res = sturm_count(co, 40, 0.0)
    assert res.count_below == 1
    assert res.x == 0.0
    assert res.sequence_length == 40
    assert sturm_count(co, 40, -2.0).count_below == 0
    assert sturm_count(co, 40, 2.0).count_below == 40


def test_negative_root_order_one():
    co = jacobi_coefficients(HALF, 1)
    r1 = negative_root(co, 1)
    assert r1 == pytest.approx(abs(co.b(0)), abs=1e-12)


def test_negative_root_order_two_closed_form():
    co = jacobi_coefficients(HALF, 2)
    b0, b1, a0 = co.b(0), co.b(1), co.a(0)
    lam = 0.5 * (b0 + b1) - math.sqrt(0.25 * (b0 - b1) ** 2 + a0 * a0)
    r2 = negative_root(co, 2)
    assert r2 == pytest.approx(-lam, abs=1e-10)


@pytest.mark.parametrize("n", [1, 8, 64])
def test_no_negative_root_beyond_unit_wavenumber(n):
    co = jacobi_coefficients(FlowParams(k=1.2, inv_bu=0.0), n)
    assert negative_root(co, n) is None


def test_root_appears_at_larger_order():
    """Near k = 1 with rotation, small truncations miss the negative root."""
    co = jacobi_coefficients(FlowParams(k=0.95, inv_bu=1.0), 64)
    for n in (1, 2, 4, 8):
        assert negative_root(co, n) is None
    assert negative_root(co, 16) == pytest.approx(ROOT_95_1_N16, abs=1e-10)
    assert negative_root(co, 64) == pytest.approx(ROOT_95_1_N64, abs=1e-10)


class _FakeCoeffs:
    """Tridiagonal stand-in with two eigenvalues below zero."""

    def diagonal(self, n):
        return np.array([-1.0, -2.0, 3.0])[:n]

    def offdiagonal(self, n):
        return np.array([1e-3, 1e-3, 1e-3])[:n]

    def gershgorin_bound(self, n):
        return 4.0


def test_multiple_negative_roots_rejected():
    with pytest.raises(MultipleNegativeRoots):
        negative_root(_FakeCoeffs(), 3)


@pytest.mark.parametrize("n", [1, 5, 12])
def test_root_spectrum_matches_dense(n):
    co = jacobi_coefficients(HALF, n)
    got = root_spectrum(co, n)
    if n == 1:
        want = np.array([co.b(0)])
    else:
        want = eigh_tridiagonal(co.diagonal(n), co.offdiagonal(n),
                                eigvals_only=True)
    assert np.max(np.abs(got - want)) < 1e-9
    assert np.all(np.diff(got) > 0.0)


def test_root_spectrum_bounds():
    co = jacobi_coefficients(HALF, 4)
    with pytest.raises(ValueError):
        root_spectrum(co, 0)
    with pytest.raises(ValueError):
        root_spectrum(co, 65)


def test_interlacing_small_orders():
    # float64 resolves the gaps comfortably up to order ~10; deeper orders
    # are covered by the high-precision acceptance check
    co = jacobi_coefficients(HALF, 12)
    prev = root_spectrum(co, 1)
    for n in range(2, 11):
        cur = root_spectrum(co, n)
        assert np.all(cur[:-1] < prev)
        assert np.all(prev < cur[1:])
        prev = cur


def test_trace_monotone():
    co = jacobi_coefficients(HALF, 60)
    trace = trace_negative_roots(co, range(1, 61))
    assert trace.n_values == tuple(range(1, 61))
    roots = np.array(trace.roots)
    assert np.all(np.diff(roots) >= -1e-14)


def test_trace_skips_absent_orders():
    co = jacobi_coefficients(FlowParams(k=0.95, inv_bu=1.0), 64)
    trace = trace_negative_roots(co, [1, 2, 4, 8, 16, 64])
    assert trace.n_values == (16, 64)
    assert len(trace.roots) == 2
    assert not trace.converged
    assert trace.r_limit is None


def test_ratio_limit_closed_form():
    rho = ratio_limit(-2.0)
    assert rho == pytest.approx((-10.0 - math.sqrt(96.0)) / 2.0, rel=1e-14)
    assert abs(rho) > 1.0
    # root of the constant-coefficient limit recurrence
    assert 0.25 * rho * rho - (-2.0 - 0.5) * rho + 0.25 == pytest.approx(0.0, abs=1e-12)


def test_ratio_asymptote_first_step():
    co = jacobi_coefficients(HALF, 2)
    assert ratio_asymptote(co, -2.0, 1) == pytest.approx(
        (-2.0 - co.b(0)) / co.a(0), rel=1e-15
    )


def test_ratio_asymptote_converges_to_limit():
    co = jacobi_coefficients(HALF, 610)
    rho500 = ratio_asymptote(co, -2.0, 500)
    assert rho500 == pytest.approx(RATIO_Z2_N500, abs=1e-8)
    limit = ratio_limit(-2.0)
    assert abs(rho500 - limit) < 1e-3
    err300 = abs(ratio_asymptote(co, -2.0, 300) - limit)
    err600 = abs(ratio_asymptote(co, -2.0, 600) - limit)
    assert err600 <= err300
