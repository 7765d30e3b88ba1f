"""
Univariate polynomial machinery for the delta operator Q = 2 sinh(tau d/dt).

``Q p(t) = p(t + tau) - p(t - tau)``.  Its basic sequence (the Gould
polynomials ``G_k(t; -tau, 2tau)``) is fixed by

    G_0 = 1,   G_k(0) = 0 (k >= 1),   Q G_k = k G_{k-1},

and is computed here by a triangular solve on coefficients.  All routines
work with any field of numbers: pass ``fractions.Fraction`` (or ints) for
exact arithmetic, floats otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in ``t``, coefficients in ascending degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        a = a + (0,) * (m - len(a))
        b = b + (0,) * (m - len(b))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + other.scale(-1)

    def scale(self, c) -> Polynomial:
        return Polynomial(tuple(c * x for x in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        return "Polynomial(" + " + ".join(f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c) + ")"


def shift_poly(p: Polynomial, c) -> Polynomial:
    """``p(t + c)`` by binomial expansion."""
    out = [0] * len(p.coeffs)
    for j, a in enumerate(p.coeffs):
        if a == 0:
            continue
        cp = 1
        for i in range(j, -1, -1):
            # term a * C(j, i) * t^i * c^(j-i)
            out[i] += a * comb(j, i) * cp
            cp = cp * c
    return Polynomial(tuple(out))


def apply_stencil(p: Polynomial, stencil) -> Polynomial:
    """``sum_i w_i p(t + s_i)`` for ``stencil = [(s_i, w_i), ...]``."""
    out = Polynomial()
    for offset, weight in stencil:
        out = out + shift_poly(p, offset).scale(weight)
    return out


def delta_apply(p: Polynomial, tau) -> Polynomial:
    """``2 sinh(tau d/dt) p = p(t + tau) - p(t - tau)``."""
    return apply_stencil(p, sinh_stencil(tau))


def sinh_stencil(tau):
    return [(tau, 1), (-tau, -1)]


def half_step_stencil(tau):
    """``[p(t + tau/2) - p(t - tau/2)] / tau``."""
    half = tau / 2 if not isinstance(tau, int) else Fraction(tau, 2)
    inv = 1 / tau if not isinstance(tau, int) else Fraction(1, tau)
    return [(half, inv), (-half, -inv)]


def delta_coefficients(stencil, kmax: int) -> list:
    """Coefficients ``b_k`` of ``L = sum_k b_k (d/dt)^k / k!`` for a finite-difference stencil.

    ``b_k`` is ``L`` applied to ``t^k`` and evaluated at ``t = 0``; in
    particular ``b_0`` is the weight sum.
    """
    return [apply_stencil(Polynomial.monomial(k), stencil)(0) for k in range(kmax + 1)]


def _solve_delta(rhs: Polynomial, tau) -> Polynomial:
    """Unique ``p`` with ``p(0) = 0`` and ``delta_apply(p, tau) == rhs``.

    ``Q t^j = sum_{i < j, j - i odd} 2 C(j, i) tau^(j-i) t^i``, an upper
    triangular map with diagonal ``2 j tau`` on ``t^j -> t^(j-1)``.
    """
    r = list(rhs.coeffs)
    deg = len(r)
    c = [0] * (deg + 1)
    for i in range(deg - 1, -1, -1):
        acc = r[i]
        for j in range(i + 3, deg + 1, 2):
            acc = acc - 2 * comb(j, i) * tau ** (j - i) * c[j]
        c[i + 1] = acc / (2 * (i + 1) * tau)
    return Polynomial(tuple(c))


@lru_cache(maxsize=64)
def gould_sequence(kmax: int, tau) -> tuple[Polynomial, ...]:
    """``(G_0, ..., G_kmax)`` for the delta operator ``2 sinh(tau d/dt)``."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    if isinstance(tau, int):
        tau = Fraction(tau)
    seq = [Polynomial((1,))]
    for k in range(1, kmax + 1):
        seq.append(_solve_delta(seq[-1].scale(k), tau))
    return tuple(seq)


def gould(k: int, tau) -> Polynomial:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return gould_sequence(k, tau)[k]


def gould_weights(t, tau, K: int) -> list[float]:
    """``G_k(t)/k!`` for ``k = 0..K`` as floats.

    Uses the scaling ``G_k(t; tau) = G_k(t/tau; 1)`` and exact rational
    coefficients; when ``t/tau`` is an integer the weights are exact up to
    the final float conversion.
    """
    x = t / tau
    if abs(x - round(x)) <= 1e-9 * max(1.0, abs(x)):
        x = Fraction(int(round(x)))
    seq = gould_sequence(K, Fraction(1))
    return [float(p(x) / factorial(k)) for k, p in enumerate(seq)]
