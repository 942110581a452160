import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from shear_spectrum.model import (
    FlowParams,
    JacobiCoefficients,
    Profile,
    jacobi_coefficients,
    qhat,
    weight,
    weight_is_zero,
    zeta,
)

HALF = FlowParams(k=0.5, inv_bu=0.0)

# hand evaluation at k = 0.5, inv_bu = 0:
#   zeta_0^2 = -0.15, zeta_1^2 = 13/340, b_0 = 2*zeta_0^2 + zeta_1^2 = -89/340
B0 = -89.0 / 340.0
ZETA0_IMAG = math.sqrt(0.15)
ZETA1_SQ = 13.0 / 340.0

PARAM_GRID = [
    FlowParams(k=0.5, inv_bu=0.0),
    FlowParams(k=0.5, inv_bu=1.0),
    FlowParams(k=0.9, inv_bu=4.0),
    FlowParams(k=1.5, inv_bu=0.7),
]


@pytest.mark.parametrize("k,inv_bu", [(0.0, 0.0), (-0.5, 0.0), (0.5, -0.1)])
def test_params_validation(k, inv_bu):
    with pytest.raises(ValueError):
        FlowParams(k=k, inv_bu=inv_bu)


def test_params_frozen():
    with pytest.raises(AttributeError):
        HALF.k = 0.7


def test_cosine_spectrum():
    prof = Profile.cosine()
    assert prof.u_hat(0) == 0.0
    assert prof.u_hat(1) == 0.5
    assert prof.u_hat(-1) == 0.5
    assert prof.u_hat(2) == 0.0
    assert prof.u_hat(37) == 0.0
    assert prof.degree == 1


def test_cosine_values():
    prof = Profile.cosine()
    y = np.linspace(0.0, 2.0 * np.pi, 101)
    assert np.allclose(prof.value(y), np.cos(y), atol=1e-14)
    assert np.allclose(prof.second_derivative(y), -np.cos(y), atol=1e-14)
    assert abs(prof.max_abs() - 1.0) < 1e-6
    lo, hi = prof.value_range()
    assert abs(lo + 1.0) < 1e-6 and abs(hi - 1.0) < 1e-6


def test_shifted_cosine():
    prof = Profile.cosine(mean=2.0)
    assert prof.u_hat(0) == 2.0
    assert prof.value(0.0) == pytest.approx(3.0, abs=1e-14)
    # the mean does not contribute to u''
    assert prof.second_derivative(0.0) == pytest.approx(-1.0, abs=1e-14)
    assert abs(prof.max_abs() - 3.0) < 1e-6
    lo, hi = prof.value_range()
    assert abs(lo - 1.0) < 1e-6 and abs(hi - 3.0) < 1e-6


def test_profile_immutable():
    prof = Profile.cosine()
    with pytest.raises(AttributeError):
        prof.degree = 5


def test_zeta_anchor():
    z0 = zeta(HALF, 0)
    assert z0.real == 0.0
    assert z0.imag == pytest.approx(ZETA0_IMAG, rel=1e-15)
    z1 = zeta(HALF, 1)
    assert z1.imag == 0.0
    assert z1.real**2 == pytest.approx(ZETA1_SQ, rel=1e-14)


@pytest.mark.parametrize("params", PARAM_GRID)
def test_zeta_squared_below_quarter(params):
    """Universal bound: zeta_j^2 < 1/4 for every j."""
    co = jacobi_coefficients(params, 200)
    for j in range(0, 401, 7):
        zsq = (co.z(j) * co.z(j)).real
        assert zsq < 0.25


@pytest.mark.parametrize("params", PARAM_GRID)
def test_zeta_factors_through_qhat(params):
    for j in range(0, 9):
        prod = qhat(params, j) * qhat(params, j + 1)
        assert zeta(params, j) == pytest.approx(prod, rel=1e-13)


def test_qhat_anchor():
    # qhat_1 at k = 0.5, inv_bu = 0: sqrt((1 + 0.25 - 1)/(1 + 0.25)) / sqrt(2)
    assert qhat(HALF, 1) == pytest.approx(math.sqrt(0.1), rel=1e-14)


def test_weight_zero_at_unit_radius():
    params = FlowParams(k=1.0, inv_bu=0.3)
    assert weight_is_zero(params, 0)
    assert weight(params, 0) == 0.0
    assert not weight_is_zero(params, 1)
    assert not weight_is_zero(HALF, 0)


def test_weight_anchor():
    w = weight(HALF, 2)
    assert w.imag == 0.0
    assert w.real == pytest.approx(math.sqrt(3.25) * math.sqrt(4.25), rel=1e-14)
    # inside the unit circle the first factor is imaginary
    w0 = weight(HALF, 0)
    assert w0.real == 0.0
    assert abs(w0) ** 2 == pytest.approx(0.75 * 0.25, rel=1e-13)


def test_b0_anchor():
    co = jacobi_coefficients(HALF, 4)
    assert co.b(0) == pytest.approx(B0, abs=2e-16)


@pytest.mark.parametrize("params", PARAM_GRID[:3])
def test_coefficients_reuse_cached_zeta(params):
    """a_j and b_j must come from the stored zeta values, bit for bit."""
    co = jacobi_coefficients(params, 30)
    z = [co.z(j) for j in range(62)]
    assert co.b(0) == 2.0 * (z[0] * z[0]).real + (z[1] * z[1]).real
    for j in range(1, 30):
        assert co.b(j) == (z[2 * j] * z[2 * j]).real + (z[2 * j + 1] * z[2 * j + 1]).real
    for j in range(30):
        assert co.a(j) == (z[2 * j + 1] * z[2 * j + 2]).real


@pytest.mark.parametrize("params", [FlowParams(k=0.5, inv_bu=0.0),
                                    FlowParams(k=0.9, inv_bu=1.0)])
def test_coefficient_limits(params):
    co = jacobi_coefficients(params, 202)
    da = np.abs(co.offdiagonal(202) - 0.25)  # a_0 .. a_200
    db = np.abs(co.diagonal(201) - 0.5)
    assert np.all(np.diff(da) < 0.0)
    assert np.all(np.diff(db) < 0.0)
    assert da[200] < 1e-3
    assert db[200] < 1e-3


def test_gershgorin_bound_dominates_rows():
    co = jacobi_coefficients(HALF, 50)
    diag = co.diagonal(50)
    off = co.offdiagonal(50)
    padded = np.concatenate([[0.0], np.abs(off[: 50 - 1]), [0.0]])
    rows = np.abs(diag) + padded[:-1] + padded[1:]
    assert co.gershgorin_bound(50) >= rows.max()


def test_extension_keeps_prefix():
    co = JacobiCoefficients(HALF)
    co.ensure(30)
    d30 = co.diagonal(30).copy()
    o30 = co.offdiagonal(30).copy()
    co.ensure(500)
    assert np.array_equal(co.diagonal(30), d30)
    assert np.array_equal(co.offdiagonal(30), o30)
    assert co.n_materialized >= 500


def test_concurrent_extension_consistent():
    co = JacobiCoefficients(HALF)
    sizes = [17, 250, 33, 300, 64, 128, 90, 210]

    def grab(n):
        return co.diagonal(n).copy()

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(grab, sizes))
    reference = jacobi_coefficients(HALF, 300)
    for n, got in zip(sizes, results):
        assert np.array_equal(got, reference.diagonal(n))


def test_factory_materializes():
    co = jacobi_coefficients(HALF, 12)
    assert co.n_materialized >= 12
    assert co.diagonal(12).shape == (12,)
    # the off-diagonal of an n-by-n tridiagonal block has n - 1 entries
    assert co.offdiagonal(12).shape == (11,)
    assert co.a(3) == co.offdiagonal(12)[3]
    assert co.b(7) == co.diagonal(12)[7]
