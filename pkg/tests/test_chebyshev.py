import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as npcheb

from discrete_ck.chebyshev import (PVQuadratureSpec, cheb_pair, cheb_t, cheb_t_trig, cheb_u,
                                   cheb_u_trig, pv_cheb_t, pv_cheb_u, pv_cosine_integral, pv_nodes,
                                   pv_omega_integral)
from discrete_ck.exceptions import ConvergenceError, RegionError

SPEC = PVQuadratureSpec(1 << 14)


def test_recurrence_examples():
    assert cheb_t(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert cheb_u(1, 0.3) == pytest.approx(0.6, abs=1e-15)
    assert cheb_u(-1, 0.3) == 0
    for k in range(10):
        assert cheb_t(k, 1.0) == 1


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        cheb_t(-1, 0.3)
    with pytest.raises(ValueError):
        cheb_u(-2, 0.3)


@pytest.mark.parametrize("k", range(0, 33))
def test_recurrence_matches_trig_form(k):
    lam = np.array([-0.9, -0.5, 0.0, 0.5, 0.9])
    assert np.max(np.abs(cheb_t(k, lam) - cheb_t_trig(k, lam))) <= 1e-12
    assert np.max(np.abs(cheb_u(k, lam) - cheb_u_trig(k, lam))) <= 1e-12


@pytest.mark.parametrize("k", [0, 1, 4, 9])
def test_recurrence_matches_numpy_chebyshev(k):
    lam = np.linspace(-1.3, 1.3, 11)  # recurrence is valid beyond [-1, 1]
    np.testing.assert_allclose(cheb_t(k, lam), npcheb.chebval(lam, [0] * k + [1]), atol=1e-12)


@given(st.integers(1, 30), st.floats(-1, 1))
def test_pythagorean_pair(k, lam):
    T, U = cheb_pair(k, lam)
    assert abs(T ** 2 + (1 - lam ** 2) * U ** 2 - 1) <= 1e-12 * k ** 2


def test_trig_edge_limits():
    assert cheb_u_trig(5, 1.0) == 6
    assert cheb_u_trig(5, -1.0) == -6
    with pytest.raises(ValueError):
        cheb_t_trig(2, 1.1)


def test_pv_examples():
    assert abs(pv_cheb_t(2, 0.3, SPEC) - (-0.82)) <= 1e-5
    assert abs(pv_cheb_u(1, 0.5, SPEC) - 1.0) <= 1e-5


def test_pv_odd_pairing_about_the_pole():
    # sin(w tau)/cos(w tau) is odd about w tau = pi/2, so its PV over [0, pi/tau] vanishes
    tau = 0.7
    val = -(tau / np.pi) * pv_omega_integral(lambda w: np.sin(w * tau), 0.0, tau, SPEC.M)
    assert abs(val) <= 1e-5


@pytest.mark.parametrize("k", range(1, 9))
@pytest.mark.parametrize("lam", [0.1, 0.5, 0.9])
def test_pv_matches_recurrence(k, lam):
    T, U = cheb_pair(k, lam)
    assert abs(pv_cheb_t(k, lam, SPEC) - T) <= 1e-5
    assert abs(pv_cheb_u(k, lam, SPEC) - U) <= 1e-5


@pytest.mark.parametrize("tau", [0.05, 0.3, 1.0, 2.5])
def test_pv_is_tau_independent(tau):
    a = pv_cheb_t(5, 0.37, SPEC, tau=tau)
    b = pv_cheb_t(5, 0.37, SPEC, tau=1.0)
    assert abs(a - b) <= 1e-12


def test_pv_error_drops_under_doubling():
    errs = []
    for M in [1 << j for j in range(6, 13)]:
        spec = PVQuadratureSpec(M)
        errs.append(max(abs(pv_cheb_u(k, lam, spec, check=False) - cheb_u(k - 1, lam))
                        for k in range(1, 9) for lam in (0.2, 0.6, 0.8)))
    errs = np.array(errs)
    assert np.all(errs[1:] < errs[:-1]), errs
    # fitted rate: at least a halving per doubling
    slope = np.polyfit(np.arange(len(errs)), np.log2(errs), 1)[0]
    assert slope <= -1, slope


def test_nodes_are_symmetric_about_the_pole():
    lam = 0.3
    theta, w = pv_nodes(lam, 64)
    phi = np.arccos(lam)
    assert np.isclose(w.sum(), np.pi)
    near = np.abs(theta - phi) < 0.5
    left = np.sort(phi - theta[near & (theta < phi)])
    right = np.sort(theta[near & (theta > phi)] - phi)
    np.testing.assert_allclose(left, right, atol=1e-14)


def test_pv_cosine_integral_closed_form():
    # PV int_0^pi dtheta/(cos theta - lam) = 0 for |lam| < 1
    assert abs(pv_cosine_integral(lambda th: np.ones_like(th), 0.45, 4096)) <= 1e-10


def test_pv_region_and_convergence_errors():
    with pytest.raises(RegionError):
        pv_cheb_t(2, 1.0, SPEC)
    with pytest.raises(ValueError):
        pv_cheb_u(0, 0.3, SPEC)
    with pytest.raises(ConvergenceError):
        pv_cheb_t(40, 0.3, PVQuadratureSpec(8), rtol=1e-6)
    with pytest.raises(ValueError):
        PVQuadratureSpec(7)
