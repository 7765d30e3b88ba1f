import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import erfcx

from discrete_ck.clifford import Multivector, Signature, generator, norm_inf
from discrete_ck.exceptions import ConvergenceError, PoleError, RegionError
from discrete_ck.lattice import LatticeGrid
from discrete_ck.mittag_leffler import (MLParams, aux_h, laplace_identity_check, laplace_resolvent,
                                        ml, ml_resolvent, resolvent_direct)
from discrete_ck.spectral import Mode, multipliers

HALF = MLParams(0.5, 0.5)


def e_half_closed(z):
    """E_{1/2,1/2}(z) = 1/sqrt(pi) + z exp(z^2) erfc(-z), written with erfcx for stability."""
    return 1 / math.sqrt(math.pi) + z * erfcx(-z)


def mp_series(alpha, beta, z, terms=200):
    with mpmath.workdps(50):
        return float(mpmath.fsum(mpmath.mpf(z) ** k / mpmath.gamma(beta + alpha * mpmath.mpf(k))
                                 for k in range(terms)))


def mode_1d(tau, xi, h=1.0):
    """Mode data at one dual point of a 1-d lattice."""
    sig = Signature(1)
    d2 = 4 / h ** 2 * math.sin(h * xi / 2) ** 2
    z = -1j * math.sin(h * xi) / h * generator(sig, 1) + (1 - math.cos(h * xi)) / h * generator(sig, 2)
    lam = math.sqrt(1 - tau ** 2 * d2 - tau ** 4 * d2 ** 2 / 4)
    return Mode(xi=np.array([xi]), d2=d2, z=z, lam=lam, tau=tau)


def test_ml_examples():
    assert abs(ml(MLParams(1, 1), 1.0) - math.e) <= 1e-12
    assert abs(ml(HALF, 0.0) - 1 / math.sqrt(math.pi)) <= 1e-15
    assert abs(ml(HALF, 0.5) - mp_series(0.5, 0.5, 0.5)) <= 1e-14


@pytest.mark.parametrize("z", np.linspace(-2, 2, 9))
def test_ml_exponential(z):
    assert abs(ml(MLParams(1, 1), z) - math.exp(z)) <= 1e-12 * max(1, math.exp(z))


@pytest.mark.parametrize("alpha,beta", [(0.5, 0.5), (0.5, 1.0), (1.0, 2.0), (2.0, 1.0), (0.3, 1.7)])
@pytest.mark.parametrize("z", [-1.5, -0.2, 0.7, 2.5])
def test_ml_against_extended_precision(alpha, beta, z):
    ref = mp_series(alpha, beta, z, terms=400)
    assert abs(ml(MLParams(alpha, beta), z) - ref) <= 1e-12 * max(1, abs(ref)) * 10


def test_ml_against_erfcx_closed_form():
    z = np.linspace(-3, 3, 61)
    vals = ml(HALF, z)
    ref = np.array([e_half_closed(v) for v in z])
    # alternating terms of size ~exp(z^2) limit the absolute accuracy for z < 0
    tol = 1e-15 * np.maximum(1, np.exp(z ** 2)) * 50
    assert np.all(np.abs(vals - ref) <= tol)


@given(st.floats(-1, 1))
def test_ml_recurrence(z):
    lhs = ml(HALF, z)
    rhs = z * ml(MLParams(0.5, 1.0), z) + 1 / math.gamma(0.5)
    assert abs(lhs - rhs) <= 1e-10


def test_ml_cos_cosh_special_cases():
    # E_{2,1}(-x^2) = cos x, E_{2,1}(x^2) = cosh x
    for x in (0.3, 1.1, 2.0):
        assert abs(ml(MLParams(2, 1), -x * x) - math.cos(x)) <= 1e-13
        assert abs(ml(MLParams(2, 1), x * x) - math.cosh(x)) <= 1e-13


def test_ml_nonconvergence_and_params():
    with pytest.raises(ConvergenceError):
        ml(MLParams(0.5, 0.5, max_terms=5), 3.0)
    with pytest.raises(ValueError):
        MLParams(0.0, 1.0)


def test_laplace_examples():
    lhs, rhs, gap = laplace_identity_check(0.5, 0.5, 0.5, 2.0, P=40)
    assert rhs == pytest.approx(2 / 3, abs=1e-15)
    assert gap <= 1e-6
    lhs, rhs, gap = laplace_identity_check(1, 1, 1.0, math.sqrt(2), P=40)
    assert rhs == pytest.approx(1.0, abs=1e-14)
    assert gap <= 1e-8
    for beta in (0.5, 1.0, 2.0):
        lhs, rhs, gap = laplace_identity_check(0.5, beta, 0.0, 1.3, P=40, M=512)
        assert rhs == pytest.approx(1.3 ** (-2 * beta))
        assert gap <= 1e-7


@pytest.mark.parametrize("lam", [0.6, 0.8, 1.0, 1.5, 2.0])
@pytest.mark.parametrize("frac", [-0.9, -0.4, 0.0, 0.4, 0.9])
def test_laplace_grid_half_half(lam, frac):
    s = frac * lam
    P = max(40.0, math.log(1e13) / (lam ** 2 - s ** 2))
    _, _, gap = laplace_identity_check(0.5, 0.5, s, lam, P=P)
    assert gap <= 1e-6


def test_laplace_gap_shrinks_with_P():
    gaps = [laplace_identity_check(0.5, 0.5, 0.5, 0.9, P=P).gap for P in (5, 10, 20, 40)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_laplace_region_errors():
    with pytest.raises(RegionError):
        laplace_identity_check(0.5, 0.5, 1.0, 0.9)
    with pytest.raises(RegionError):
        laplace_resolvent(0.95, 0.9)


def test_laplace_quadrature_self_check():
    with pytest.raises(ConvergenceError):
        laplace_identity_check(0.5, 0.5, 0.99, 1.0, P=400, M=16, qtol=1e-12)


def test_scalar_resolvent_surrogate():
    assert abs(laplace_resolvent(0.3, 0.9) - 1 / 0.6) <= 1e-6
    assert abs(laplace_resolvent(0.0, 0.9) - 1 / 0.9) <= 1e-6


def test_resolvent_direct_at_origin():
    mode = mode_1d(1.0 / 3, 0.0)
    r = resolvent_direct(math.pi / 2 / mode.tau, mode, mode.tau)
    assert norm_inf(r - Multivector(Signature(1), {0: 1j})) <= 1e-15


def test_resolvent_sign_flips_across_pole():
    mode = mode_1d(0.3, 1.0)
    w_star = math.acos(mode.lam) / mode.tau
    below = resolvent_direct(w_star * (1 - 1e-3), mode, mode.tau).scalar_part()
    above = resolvent_direct(w_star * (1 + 1e-3), mode, mode.tau).scalar_part()
    assert np.sign(below.imag) != np.sign(above.imag)
    with pytest.raises(PoleError):
        resolvent_direct(w_star, mode, mode.tau)


def test_ml_resolvent_matches_direct_full_multivector():
    # tau chosen so that lam = 0.8 at xi = pi/2, h = 1 (d2 = 2)
    tau = math.sqrt(2 * (math.sqrt(1.36) - 1) / 2)
    mode = mode_1d(tau, math.pi / 2)
    assert mode.lam == pytest.approx(0.8, abs=1e-14)
    omega = math.acos(0.2) / tau
    direct = resolvent_direct(omega, mode, tau)
    via_ml = ml_resolvent(omega, mode, tau, P=40)
    assert norm_inf(direct - via_ml) <= 1e-6
    with pytest.raises(RegionError):
        ml_resolvent(0.0, mode, tau)


def test_ml_resolvent_on_a_lattice_region():
    grid = LatticeGrid(2, 8, 1.0)
    mult = multipliers(grid, 0.2)
    for idx in [(1, 0), (2, 3), (4, 4)]:
        mode = mult.entry(idx)
        for s in np.linspace(-0.9, 0.9, 5) * mode.lam:
            omega = math.acos(s) / mode.tau
            gap = norm_inf(ml_resolvent(omega, mode, mode.tau) - resolvent_direct(omega, mode, mode.tau))
            assert gap <= 1e-6


def test_aux_h_parity_at_origin():
    mode = Mode(xi=np.zeros(1), d2=0.0, z=Multivector(Signature(1)), lam=1.0, tau=1.0)
    val = aux_h(mode, 0.0, 1.0, 1.0, 256)
    assert norm_inf(val) <= 1e-13


def test_aux_h_small_p_scaling():
    # at t = 0 the constant leading term of E(s sqrt p)/sqrt p survives the omega-integral
    mode = mode_1d(0.3, 1.2)
    a = aux_h(mode, 0.0, 1e-8, 0.3, 256)
    b = aux_h(mode, 0.0, 1e-10, 0.3, 256)
    # sqrt(p) * aux_h tends to a p-independent limit
    assert norm_inf(a * 1e-4 - b * 1e-5) <= 1e-4 * norm_inf(b * 1e-5)
    assert norm_inf(b) > 1e3


def test_aux_h_self_convergence():
    mode = mode_1d(0.3, 1.2)
    a = aux_h(mode, 0.9, 1.0, 0.3, 128)
    b = aux_h(mode, 0.9, 1.0, 0.3, 256)
    assert norm_inf(a - b) <= 1e-8
    with pytest.raises(ValueError):
        aux_h(mode, 0.9, 0.0, 0.3)
