"""
Discrete Fourier transform on the periodic lattice and Fourier multipliers.

Conventions (``x = h*m``, ``xi`` on the dual lattice of the zone
``(-pi/h, pi/h]^n``)::

    (F f)(xi)    = h^n (2 pi)^(-n/2) sum_x f(x) exp(+i x.xi)
    (F^-1 G)(x)  = (2 pi)^(-n/2) sum_xi G(xi) exp(-i x.xi) dxi,   dxi = (2 pi/(N h))^n

The dual sum is the exact finite-lattice version of the integral over the
zone, so the pair is an exact isometry.  Transforms act blade by blade.
Momentum arrays are stored in FFT index order (see
:attr:`LatticeGrid.frequencies`).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_pair
from .clifford import Multivector, generator, left_multiply
from .exceptions import CFLError, GridMismatchError, NonLatticeTimeError
from .lattice import CliffordField, LatticeGrid, time_generators

#: tau^2 * d_h(xi)^2 must not exceed this anywhere on the dual lattice.
CFL_BOUND = 2 * (np.sqrt(2) - 1)


@dataclass(frozen=True, eq=False)
class MomentumField:
    """One multivector per dual-lattice point (FFT-ordered)."""

    grid: LatticeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.field_shape:
            raise ValueError(f"values must have shape {self.grid.field_shape}, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __add__(self, other: MomentumField) -> MomentumField:
        if other.grid != self.grid:
            raise GridMismatchError("momentum fields live on different grids")
        return MomentumField(self.grid, self.values + other.values)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values), initial=0.0))


def _axes(grid: LatticeGrid) -> tuple[int, ...]:
    return tuple(range(grid.n))


def forward_dft(f: CliffordField) -> MomentumField:
    grid = f.grid
    scale = grid.cell_volume * (2 * np.pi) ** (-grid.n / 2) * grid.size
    # numpy's ifftn carries exp(+2 pi i m k / N) / N^n
    return MomentumField(grid, scale * np.fft.ifftn(f.values, axes=_axes(grid)))


def inverse_dft(F: MomentumField) -> CliffordField:
    grid = F.grid
    scale = (2 * np.pi) ** (-grid.n / 2) * grid.dual_volume
    return CliffordField(grid, scale * np.fft.fftn(F.values, axes=_axes(grid)))


def apply_multiplier(mult: np.ndarray, F: MomentumField) -> MomentumField:
    """Pointwise Clifford product ``mult(xi) * F(xi)``."""
    return MomentumField(F.grid, left_multiply(mult, F.values, F.grid.n))


# ----------------------------------------------------------------------
# multipliers


def cfl_max_tau(grid: LatticeGrid) -> float:
    """Largest tau with tau^2 * max d_h^2 <= 2(sqrt 2 - 1); max d_h^2 = 4n/h^2."""
    return grid.h * np.sqrt((np.sqrt(2) - 1) / (2 * grid.n))


def check_cfl(grid: LatticeGrid, tau: float) -> None:
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    limit = cfl_max_tau(grid)
    if tau > limit * (1 + 1e-12):
        raise CFLError(
            f"tau = {tau:.17g} violates d_h(xi)^2 * tau^2 <= 2(sqrt(2)-1) "
            f"(max d_h^2 = 4n/h^2 = {4 * grid.n / grid.h ** 2:g}); need tau <= {limit:.17g}")


def lattice_steps(t: float, tau: float) -> int:
    """``t/tau`` as a nonnegative integer, or :class:`NonLatticeTimeError`."""
    if isinstance(t, (int, np.integer)) and isinstance(tau, (int, np.integer)):
        q, r = divmod(t, tau)
        if r == 0 and q >= 0:
            return int(q)
    k = t / tau
    kr = int(round(k))
    if kr < 0 or abs(k - kr) > 1e-9 * max(1.0, abs(k)):
        raise NonLatticeTimeError(f"t/tau = {k!r} is not a nonnegative integer")
    return kr


@dataclass(frozen=True, eq=False)
class Mode:
    """Multiplier data at one dual point."""

    xi: np.ndarray
    d2: float
    z: Multivector
    lam: float
    tau: float

    @property
    def S(self) -> float:
        """tau^2 d2 + tau^4 d2^2 / 4, so that lam^2 = 1 - S."""
        return self.tau ** 2 * self.d2 + self.tau ** 4 * self.d2 ** 2 / 4

    def b(self) -> Multivector:
        """``tau e_0 z - (tau^2/2) e_{2n+1} e_0 d2``."""
        sig = self.z.signature
        e0 = generator(sig, 0)
        e_t0 = generator(sig, sig.g - 1) * e0
        return self.tau * (e0 * self.z) - (self.tau ** 2 / 2 * self.d2) * e_t0


@dataclass(frozen=True, eq=False)
class Multipliers:
    """Fourier multipliers of -Delta_h (``d2``) and D_h (``z``) plus ``lam`` on the dual lattice."""

    grid: LatticeGrid
    tau: float
    d2: np.ndarray
    z: np.ndarray
    lam: np.ndarray

    @property
    def S(self) -> np.ndarray:
        return self.tau ** 2 * self.d2 + self.tau ** 4 * self.d2 ** 2 / 4

    def b(self) -> np.ndarray:
        """Dense ``tau e_0 z(xi) - (tau^2/2) e_{2n+1} e_0 d2(xi)`` per dual point."""
        e0, e_t0 = time_generators(self.grid)
        out = self.tau * left_multiply(e0, self.z, self.grid.n)
        out[..., _mask(e_t0)] += -(self.tau ** 2 / 2) * self.d2 * e_t0[_mask(e_t0)]
        return out

    def entry(self, index) -> Mode:
        index = tuple(np.atleast_1d(index))
        xi = np.array([self.grid.frequencies[i] for i in index])
        return Mode(xi=xi, d2=float(self.d2[index]),
                    z=Multivector.from_dense(self.grid.signature, self.z[index]),
                    lam=float(self.lam[index]), tau=self.tau)

    def indices(self):
        return np.ndindex(*self.grid.shape)


def _mask(mv: Multivector) -> int:
    (mask, _), = mv.terms.items()
    return mask


def d2_multiplier(grid: LatticeGrid) -> np.ndarray:
    return sum((4 / grid.h ** 2) * np.sin(grid.h * xi / 2) ** 2 for xi in grid.xi_mesh())


def z_multiplier(grid: LatticeGrid) -> np.ndarray:
    """``sum_j -i e_j sin(h xi_j)/h + e_{n+j} (1 - cos(h xi_j))/h`` as a dense array."""
    n, h = grid.n, grid.h
    z = np.zeros(grid.field_shape, dtype=complex)
    for j, xi in enumerate(grid.xi_mesh(), start=1):
        z[..., 1 << j] += -1j * np.sin(h * xi) / h
        z[..., 1 << (n + j)] += (1 - np.cos(h * xi)) / h
    return z


def multipliers(grid: LatticeGrid, tau: float) -> Multipliers:
    """Multipliers at every dual point; ``lam`` uses the principal square root.

    Raises :class:`CFLError` when the radicand of ``lam`` would go
    negative.
    """
    check_cfl(grid, tau)
    d2 = d2_multiplier(grid)
    radicand = 1 - tau ** 2 * d2 - tau ** 4 * d2 ** 2 / 4
    # only rounding noise can push it below zero once the CFL check passed
    lam = np.sqrt(np.clip(radicand, 0.0, None))
    return Multipliers(grid=grid, tau=tau, d2=d2, z=z_multiplier(grid), lam=lam)


def propagator_multiplier(mult: Multipliers, tau: float, t: float) -> np.ndarray:
    """``T_k(lam) + U_{k-1}(lam) * B(xi)`` with ``k = t/tau``, as dense multivectors."""
    if not np.isclose(tau, mult.tau, rtol=1e-14, atol=0):
        raise ValueError("multipliers were built for a different tau")
    check_cfl(mult.grid, tau)
    k = lattice_steps(t, tau)
    T, U = cheb_pair(k, mult.lam)
    out = U[..., None] * mult.b()
    out[..., 0] += T
    return out


def series_multiplier(mult: Multipliers, t: float) -> np.ndarray:
    """Resummed Gould series: ``cosh(k asinh r) + sinh(k asinh r)/r * B(xi)``, ``r = sqrt(S)``.

    This is the closed form of ``sum_k G_k(t)/k! (2B)^k`` using ``B^2 = S``;
    it is the exact multiplier of the two-level recursion
    ``Psi(t+tau) = Psi(t-tau) + A Psi(t)`` started from ``sqrt(1+S) + B``.
    """
    k = lattice_steps(t, mult.tau)
    r = np.sqrt(mult.S)
    a = np.arcsinh(r)
    safe = np.where(r > 0, r, 1.0)
    ratio = np.where(r > 0, np.sinh(k * a) / safe, float(k))
    out = ratio[..., None] * mult.b()
    out[..., 0] += np.cosh(k * a)
    return out


def spectral_apply(f: CliffordField, mult_array: np.ndarray) -> CliffordField:
    """``F^-1 (mult * F f)``."""
    return inverse_dft(apply_multiplier(mult_array, forward_dft(f)))
