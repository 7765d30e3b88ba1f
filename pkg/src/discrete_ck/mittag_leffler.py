"""
Generalised Mittag-Leffler function and the Laplace-type representations
built on it.

``E_{a,b}(z) = sum_k z^k / Gamma(b + a k)``.  The Laplace identity used
throughout is taken with a *decaying* weight::

    int_0^inf exp(-p lam^2) p^(b-1) E_{a,b}(s p^a) dp = lam^(-2b) / (1 - s lam^(-2a)),
    valid for lam^2 > |s|^(1/a).

For ``a = b = 1/2`` this gives ``1/(lam - s)``, which turns the resolvent
``1/(cos(w tau) - lam)`` into a p-integral wherever ``|cos(w tau)| < lam``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exceptions import ConvergenceError, PoleError, RegionError
from .spectral import Mode

HALF = 0.5


@dataclass(frozen=True)
class MLParams:
    alpha: float
    beta: float
    eps: float = 1e-17
    max_terms: int = 4000

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"alpha and beta must be positive, got {self.alpha}, {self.beta}")


def ml(params: MLParams, z):
    """Partial sums of the Mittag-Leffler series.

    Summation stops once ``|term| < eps * (1 + |partial|)`` has held for
    three consecutive terms at every evaluation point.  Works on scalars
    and arrays; terms are formed in log space so large ``|z|`` does not
    overflow before the factorial-like Gamma growth takes over.
    """
    a, b = params.alpha, params.beta
    z = np.asarray(z, dtype=float)
    logabs = np.log(np.abs(np.where(z == 0, 1.0, z)))
    neg = z < 0
    total = np.zeros_like(z)
    quiet = np.zeros(z.shape, dtype=int)
    for k in range(params.max_terms):
        lg = math.lgamma(b + a * k)
        if k == 0:
            term = np.full_like(z, math.exp(-lg))
        else:
            mag = np.exp(k * logabs - lg)
            term = np.where(z == 0, 0.0, np.where(neg & (k % 2 == 1), -mag, mag))
        total = total + term
        small = np.abs(term) < params.eps * (1 + np.abs(total))
        quiet = np.where(small, quiet + 1, 0)
        if np.all(quiet >= 3):
            return total.item() if total.ndim == 0 else total
    raise ConvergenceError(f"Mittag-Leffler series not converged in {params.max_terms} terms")


def mittag_leffler(alpha: float, beta: float, z, **kwargs):
    return ml(MLParams(alpha, beta, **kwargs), z)


# ----------------------------------------------------------------------
# quadrature helpers


@lru_cache(maxsize=None)
def _gl_reference(order: int):
    return np.polynomial.legendre.leggauss(order)


def gauss_legendre(a: float, b: float, M: int, order: int = 16):
    """Composite Gauss-Legendre nodes/weights with about ``M`` nodes on ``[a, b]``."""
    panels = max(1, -(-M // order))
    x, w = _gl_reference(order)
    edges = np.linspace(a, b, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


class LaplaceCheck(NamedTuple):
    lhs: float
    rhs: float
    gap: float


def laplace_rhs(alpha: float, beta: float, s: float, lam: float) -> float:
    return lam ** (-2 * beta) / (1 - s * lam ** (-2 * alpha))


def _laplace_lhs(alpha, beta, s, lam, P, M):
    if beta >= 1:
        p, w = gauss_legendre(0.0, P, M)
        vals = np.exp(-p * lam ** 2) * p ** (beta - 1) * ml(MLParams(alpha, beta), s * p ** alpha)
        return float(np.sum(w * vals))
    # p = u^(1/beta) absorbs the integrable p^(beta-1) singularity: p^(beta-1) dp = du/beta
    u, w = gauss_legendre(0.0, P ** beta, M)
    p = u ** (1 / beta)
    vals = np.exp(-p * lam ** 2) * ml(MLParams(alpha, beta), s * p ** alpha)
    return float(np.sum(w * vals) / beta)


def laplace_identity_check(alpha: float, beta: float, s: float, lam: float,
                           P: float = 40.0, M: int = 256, qtol: float = 1e-9) -> LaplaceCheck:
    """Compare the truncated Laplace integral with its closed form.

    ``lhs`` integrates over ``[0, P]`` with composite Gauss-Legendre; for
    ``beta < 1`` the substitution ``p = u^(1/beta)`` removes the endpoint
    singularity first.  The value at ``2M`` nodes is
    returned; if it moves by more than ``qtol`` (relative) from the value
    at ``M`` nodes, :class:`ConvergenceError` is raised.
    """
    if not lam > 0:
        raise RegionError("lam must be positive")
    if not lam ** 2 > abs(s) ** (1 / alpha):
        raise RegionError(f"need lam^2 > |s|^(1/alpha): lam={lam}, s={s}, alpha={alpha}")
    coarse = _laplace_lhs(alpha, beta, s, lam, P, M)
    fine = _laplace_lhs(alpha, beta, s, lam, P, 2 * M)
    if abs(fine - coarse) > qtol * max(1.0, abs(fine)):
        raise ConvergenceError(f"Laplace quadrature moved {abs(fine - coarse):.3e} from M={M} to {2 * M}")
    rhs = laplace_rhs(alpha, beta, s, lam)
    return LaplaceCheck(fine, rhs, abs(fine - rhs))


def truncation_point(s, lam: float, floor: float = 40.0) -> float:
    """Smallest ``P >= floor`` with ``exp(-P (lam^2 - s^2)) <= 1e-12`` for every ``s``."""
    gap = lam ** 2 - np.max(np.asarray(s, dtype=float) ** 2)
    return max(floor, math.log(1e12) / gap)


def laplace_resolvent(s, lam: float, P: float | None = None, M: int = 256):
    """``int_0^P exp(-p lam^2) E_{1/2,1/2}(s sqrt p)/sqrt p dp``, which tends to ``1/(lam - s)``.

    ``s`` may be an array; every entry must satisfy ``|s| < lam``.  With
    ``P=None`` the truncation point comes from :func:`truncation_point`.
    """
    s = np.asarray(s, dtype=float)
    if not lam > 0 or np.any(np.abs(s) >= lam):
        raise RegionError(f"Laplace representation needs |s| < lam (lam={lam})")
    if P is None:
        P = truncation_point(s, lam)
    u, w = gauss_legendre(0.0, math.sqrt(P), M)
    table = ml(MLParams(HALF, HALF), np.multiply.outer(s, u))
    out = 2 * np.sum(table * (w * np.exp(-(u * lam) ** 2)), axis=-1)
    return out.item() if out.ndim == 0 else out


# ----------------------------------------------------------------------
# resolvent of the Chebyshev integrand


def resolvent_numerator(omega: float, mode: Mode, tau: float):
    """``-i sin(w tau) + tau e_0 z - (tau^2/2) e_{2n+1} e_0 z^2`` (``z^2 = d2``)."""
    return mode.b() + (-1j * math.sin(omega * tau))


def resolvent_direct(omega: float, mode: Mode, tau: float):
    """Numerator divided by the real scalar ``cos(w tau) - lam``."""
    den = math.cos(omega * tau) - mode.lam
    if abs(den) < 1e-14:
        raise PoleError(f"cos(omega tau) = lam at omega = {omega}")
    return resolvent_numerator(omega, mode, tau) / den


def ml_resolvent(omega: float, mode: Mode, tau: float, P: float | None = None, M: int = 256):
    """Resolvent through the Mittag-Leffler Laplace representation.

    ``-int_0^P numerator * exp(-p lam^2) E_{1/2,1/2}(cos(w tau) sqrt p)/sqrt p dp``;
    only defined where ``|cos(w tau)| < lam``.  ``P=None`` picks the
    truncation point automatically.
    """
    s = math.cos(omega * tau)
    if not abs(s) < mode.lam:
        raise RegionError(f"|cos(omega tau)| = {abs(s)} is not below lam = {mode.lam}")
    return resolvent_numerator(omega, mode, tau) * (-laplace_resolvent(s, mode.lam, P, M))


def aux_h(mode: Mode, t: float, p: float, tau: float, M_omega: int = 512):
    """``-(tau/2 pi) int numerator(w) E_{1/2,1/2}(cos(w tau) sqrt p)/sqrt p exp(-i w t) dw``.

    The integral runs over ``(-pi/tau, pi/tau]`` with ``M_omega`` uniform
    midpoint nodes; the integrand is smooth and periodic.
    """
    if not p > 0:
        raise ValueError("p must be positive")
    width = 2 * math.pi / tau
    omega = -math.pi / tau + (np.arange(M_omega) + 0.5) * (width / M_omega)
    rp = math.sqrt(p)
    g = ml(MLParams(HALF, HALF), np.cos(omega * tau) * rp) / rp * np.exp(-1j * omega * t)
    dw = width / M_omega
    pref = -tau / (2 * math.pi)
    scalar_part = pref * dw * np.sum(-1j * np.sin(omega * tau) * g)
    b_part = pref * dw * np.sum(g)
    return mode.b() * complex(b_part) + complex(scalar_part)
