"""
Chebyshev polynomials T_k, U_k and their principal-value integral forms.

With ``theta = omega*tau`` and ``lam = cos(phi)``:

    T_k(lam)     = -(1/pi) PV int_0^pi sin(theta) sin(k theta) / (cos(theta) - lam) dtheta
    U_{k-1}(lam) =  (1/pi) PV int_0^pi cos(k theta)            / (cos(theta) - lam) dtheta

The principal value is taken with midpoint panels laid out symmetrically
about the pole, see :func:`pv_cosine_integral`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError, RegionError


def cheb_t(k: int, lam):
    """First-kind Chebyshev polynomial by the three-term recurrence."""
    if k < 0:
        raise ValueError(f"T_k needs k >= 0, got {k}")
    lam = np.asarray(lam, dtype=float) if not np.iscomplexobj(lam) else np.asarray(lam)
    prev, cur = np.ones_like(lam), lam
    if k == 0:
        return _unwrap(prev)
    for _ in range(k - 1):
        prev, cur = cur, 2 * lam * cur - prev
    return _unwrap(cur)


def cheb_u(k: int, lam):
    """Second-kind Chebyshev polynomial, with the convention U_{-1} = 0."""
    if k < -1:
        raise ValueError(f"U_k needs k >= -1, got {k}")
    lam = np.asarray(lam, dtype=float) if not np.iscomplexobj(lam) else np.asarray(lam)
    prev, cur = np.zeros_like(lam), np.ones_like(lam)
    if k == -1:
        return _unwrap(prev)
    for _ in range(k):
        prev, cur = cur, 2 * lam * cur - prev
    return _unwrap(cur)


def cheb_pair(k: int, lam):
    """``(T_k(lam), U_{k-1}(lam))`` from one recurrence pass."""
    return cheb_t(k, lam), cheb_u(k - 1, lam)


def cheb_t_trig(k: int, lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(np.abs(lam) > 1):
        raise ValueError("trigonometric form needs |lam| <= 1")
    return _unwrap(np.cos(k * np.arccos(lam)))


def cheb_u_trig(k: int, lam):
    """U_k via sin((k+1) theta)/sin(theta); the limit k+1 (or (-1)^k (k+1)) at |lam| = 1."""
    lam = np.asarray(lam, dtype=float)
    if np.any(np.abs(lam) > 1):
        raise ValueError("trigonometric form needs |lam| <= 1")
    theta = np.arccos(lam)
    s = np.sin(theta)
    edge = s < 1e-12
    safe = np.where(edge, 1.0, s)
    val = np.sin((k + 1) * theta) / safe
    limit = (k + 1) * np.where(lam > 0, 1.0, (-1.0) ** k)
    return _unwrap(np.where(edge, limit, val))


def _unwrap(x):
    return x.item() if np.ndim(x) == 0 else x


@dataclass(frozen=True)
class PVQuadratureSpec:
    """Principal-value rule with ``M`` midpoint panels (``M`` even)."""

    M: int = 1 << 14

    def __post_init__(self):
        if self.M < 2 or self.M % 2:
            raise ValueError(f"node count must be an even integer >= 2, got {self.M}")


def pv_nodes(lam: float, M: int, a: float = 0.0, b: float = np.pi):
    """Nodes and weights for ``PV int_a^b f(theta)/(cos(theta) - lam) dtheta``.

    The pole ``phi = arccos(lam)`` must lie strictly inside ``(a, b)`` with
    ``0 <= a < b <= pi``.  Around the pole a window ``[phi - d, phi + d]`` is
    filled with an even number of equal midpoint panels mirrored about
    ``phi``, so the odd (singular) part of the integrand cancels pairwise.
    The rest of the interval gets ordinary midpoint panels of about the
    same width ``(b - a)/M``.
    """
    phi = float(np.arccos(lam))
    if not a < phi < b:
        raise RegionError(f"pole {phi} not inside ({a}, {b})")
    H = (b - a) / M
    d = min(phi - a, b - phi)
    m = max(1, int(round(d / H)))
    u = (np.arange(m) + 0.5) * (d / m)
    theta = [phi - u, phi + u]
    weights = [np.full(2 * m, d / m)]
    lo, hi = (phi + d, b) if phi - a < b - phi else (a, phi - d)
    length = hi - lo
    if length > 1e-15 * (b - a):
        mo = max(1, int(round(length / H)))
        theta.append(lo + (np.arange(mo) + 0.5) * (length / mo))
        weights.append(np.full(mo, length / mo))
    theta = np.concatenate(theta)
    weights = np.concatenate(weights)
    order = np.argsort(theta, kind="stable")
    return theta[order], weights[order]


def pv_cosine_integral(f, lam: float, M: int, a: float = 0.0, b: float = np.pi):
    """``PV int_a^b f(theta)/(cos(theta) - lam) dtheta`` for a vectorised ``f``.

    ``f`` maps an array of angles to an array whose *last* axis runs over
    the angles; leading axes (blade channels, modes) are carried through.
    """
    theta, w = pv_nodes(lam, M, a, b)
    return np.sum(np.asarray(f(theta)) * (w / (np.cos(theta) - lam)), axis=-1)


def _check_pv_args(k: int, lam: float, tau: float):
    if k < 1:
        raise ValueError(f"degree must be >= 1, got {k}")
    if not abs(lam) < 1:
        raise RegionError(f"|lam| must be < 1 for the pole to be interior, got {lam}")
    if tau <= 0:
        raise ValueError("tau must be positive")


def pv_omega_integral(f, lam: float, tau: float, M: int):
    """``PV int_0^{pi/tau} f(omega)/(cos(omega tau) - lam) d omega``.

    Nodes from :func:`pv_nodes` mapped by ``omega = theta/tau``.
    """
    theta, w = pv_nodes(lam, M)
    omega = theta / tau
    return np.sum(np.asarray(f(omega)) * ((w / tau) / (np.cos(theta) - lam)), axis=-1)


def _pv_checked(integrand, lam, tau, M, check, rtol):
    val = pv_omega_integral(integrand, lam, tau, M)
    if check:
        coarse = pv_omega_integral(integrand, lam, tau, M // 2)
        if abs(val - coarse) > rtol * max(1.0, abs(val)):
            raise ConvergenceError(
                f"PV quadrature not converged: M={M} gives {val}, M={M // 2} gives {coarse}")
    return val


def pv_cheb_t(k: int, lam: float, spec: PVQuadratureSpec = PVQuadratureSpec(), tau: float = 1.0,
              check: bool = True, rtol: float = 1e-3) -> float:
    """T_k(lam) = -(tau/pi) PV int_0^{pi/tau} sin(w tau) sin(w t)/(cos(w tau) - lam) dw, t = k tau.

    With ``check`` the value at ``M/2`` nodes must agree to ``rtol``,
    otherwise :class:`ConvergenceError` flags ``M`` as too small.
    """
    _check_pv_args(k, lam, tau)
    t = k * tau
    val = _pv_checked(lambda w: np.sin(w * tau) * np.sin(w * t), lam, tau, spec.M, check, rtol)
    return float(-(tau / np.pi) * val)


def pv_cheb_u(k: int, lam: float, spec: PVQuadratureSpec = PVQuadratureSpec(), tau: float = 1.0,
              check: bool = True, rtol: float = 1e-3) -> float:
    """U_{k-1}(lam) = (tau/pi) PV int_0^{pi/tau} cos(w t)/(cos(w tau) - lam) dw, t = k tau."""
    _check_pv_args(k, lam, tau)
    t = k * tau
    val = _pv_checked(lambda w: np.cos(w * t), lam, tau, spec.M, check, rtol)
    return float((tau / np.pi) * val)
