"""
Periodic lattice, Clifford-valued fields and finite-difference operators.

The spatial lattice is h*Z^n folded onto an N^n torus.  A field stores one
dense multivector per site in an array of shape ``(N,)*n + (2**(2n+2),)``.
All operators are pure and return new fields.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .clifford import Multivector, Signature, generator, left_multiply
from .exceptions import GridMismatchError


@dataclass(frozen=True)
class LatticeGrid:
    """Periodic lattice with ``N`` points per axis and spacing ``h``.

    Site ``m`` in ``{0..N-1}^n`` is the physical point ``h*m``.  Dual
    frequencies are ``xi_k = 2*pi*k/(N*h)`` for ``k`` in
    ``{-N/2+1, ..., N/2}``, i.e. the half-open zone ``(-pi/h, pi/h]``.
    """

    n: int
    N: int
    h: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.n!r}")
        if not isinstance(self.N, (int, np.integer)) or self.N < 4 or self.N % 2:
            raise ValueError(f"points per axis must be an even integer >= 4, got {self.N!r}")
        if not np.isfinite(self.h) or self.h <= 0:
            raise ValueError(f"spacing must be positive, got {self.h!r}")

    @property
    def signature(self) -> Signature:
        return Signature(self.n)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.n

    @property
    def field_shape(self) -> tuple[int, ...]:
        return self.shape + (self.signature.dim,)

    @property
    def size(self) -> int:
        return self.N ** self.n

    @property
    def cell_volume(self) -> float:
        return self.h ** self.n

    @property
    def dual_volume(self) -> float:
        """Dual-lattice cell volume (2*pi/(N*h))**n."""
        return (2 * np.pi / (self.N * self.h)) ** self.n

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Signed integer wavenumber for each FFT-ordered index along an axis."""
        k = np.arange(self.N)
        k[k > self.N // 2] -= self.N
        return k

    @cached_property
    def frequencies(self) -> np.ndarray:
        """Per-axis dual frequencies, FFT-ordered, all in (-pi/h, pi/h]."""
        return 2 * np.pi * self.wavenumbers / (self.N * self.h)

    def xi_mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*([self.frequencies] * self.n), indexing="ij")

    def position_mesh(self) -> list[np.ndarray]:
        """Physical coordinates h*m of every site (m in 0..N-1)."""
        x = self.h * np.arange(self.N)
        return np.meshgrid(*([x] * self.n), indexing="ij")

    def centered_mesh(self) -> list[np.ndarray]:
        """Minimum-image coordinates measured from the origin site."""
        return [self.h * m for m in np.meshgrid(*([self.wavenumbers] * self.n), indexing="ij")]


@dataclass(frozen=True, eq=False)
class CliffordField:
    """One multivector per lattice site."""

    grid: LatticeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.field_shape:
            raise ValueError(f"values must have shape {self.grid.field_shape}, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, grid: LatticeGrid) -> CliffordField:
        return cls(grid, np.zeros(grid.field_shape, dtype=complex))

    @classmethod
    def from_scalar(cls, grid: LatticeGrid, scalar_values, blade: int = 0) -> CliffordField:
        """Field whose only nonzero blade channel is ``blade``."""
        values = np.zeros(grid.field_shape, dtype=complex)
        values[..., blade] = scalar_values
        return cls(grid, values)

    @classmethod
    def constant(cls, grid: LatticeGrid, mv: Multivector) -> CliffordField:
        values = np.broadcast_to(mv.to_dense(), grid.field_shape).copy()
        return cls(grid, values)

    @classmethod
    def delta(cls, grid: LatticeGrid, site=None, value: Multivector | None = None) -> CliffordField:
        values = np.zeros(grid.field_shape, dtype=complex)
        site = tuple(site) if site is not None else (0,) * grid.n
        values[site] = value.to_dense() if value is not None else _unit(grid)
        return cls(grid, values)

    @classmethod
    def gaussian(cls, grid: LatticeGrid, sigma: float) -> CliffordField:
        """Scalar Gaussian centred on the origin site (minimum-image distance)."""
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        r2 = sum(c ** 2 for c in grid.centered_mesh())
        return cls.from_scalar(grid, np.exp(-r2 / (2 * sigma ** 2)))

    @classmethod
    def planewave(cls, grid: LatticeGrid, k) -> CliffordField:
        """Scalar mode exp(-i x.xi_k); its transform is concentrated on xi_k."""
        k = np.atleast_1d(np.asarray(k, dtype=int))
        k = np.concatenate([k, np.zeros(grid.n - len(k), dtype=int)])
        phase = sum(2 * np.pi * kj * x / (grid.N * grid.h) for kj, x in zip(k, grid.position_mesh()))
        return cls.from_scalar(grid, np.exp(-1j * phase))

    @classmethod
    def random(cls, grid: LatticeGrid, rng: np.random.Generator, blades=None) -> CliffordField:
        values = np.zeros(grid.field_shape, dtype=complex)
        blades = range(grid.signature.dim) if blades is None else blades
        for b in blades:
            values[..., b] = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
        return cls(grid, values)

    # access / arithmetic ----------------------------------------------

    def at(self, site) -> Multivector:
        return Multivector.from_dense(self.grid.signature, self.values[tuple(site)])

    def _check(self, other: CliffordField):
        if other.grid != self.grid:
            raise GridMismatchError(f"grid mismatch: {self.grid} vs {other.grid}")

    def __add__(self, other: CliffordField) -> CliffordField:
        self._check(other)
        return CliffordField(self.grid, self.values + other.values)

    def __sub__(self, other: CliffordField) -> CliffordField:
        self._check(other)
        return CliffordField(self.grid, self.values - other.values)

    def __neg__(self) -> CliffordField:
        return CliffordField(self.grid, -self.values)

    def __mul__(self, c) -> CliffordField:
        if isinstance(c, (CliffordField, Multivector)):
            return NotImplemented
        return CliffordField(self.grid, c * self.values)

    __rmul__ = __mul__

    def left_mul(self, mv: Multivector) -> CliffordField:
        """Site-wise Clifford product ``mv * f(x)``."""
        return CliffordField(self.grid, left_multiply(mv, self.values, self.grid.n))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values), initial=0.0))

    def active_blades(self) -> np.ndarray:
        flat = self.values.reshape(-1, self.values.shape[-1])
        return np.flatnonzero(np.any(flat != 0, axis=0))


def _unit(grid: LatticeGrid) -> np.ndarray:
    one = np.zeros(grid.signature.dim, dtype=complex)
    one[0] = 1
    return one


def sup_distance(a: CliffordField, b: CliffordField) -> float:
    return (a - b).sup_norm()


def shift(f: CliffordField, axis: int, direction: int) -> CliffordField:
    """``g(x) = f(x + direction*h*e_axis)`` with periodic wraparound (axis is 1-based)."""
    if not 1 <= axis <= f.grid.n:
        raise IndexError(f"axis {axis} out of range 1..{f.grid.n}")
    if direction not in (-1, 1):
        raise ValueError("direction must be +1 or -1")
    return CliffordField(f.grid, np.roll(f.values, -direction, axis=axis - 1))


def _neighbours(f: CliffordField, axis: int) -> tuple[np.ndarray, np.ndarray]:
    return (np.roll(f.values, -1, axis=axis - 1), np.roll(f.values, 1, axis=axis - 1))


def laplacian(f: CliffordField) -> CliffordField:
    h2 = f.grid.h ** 2
    out = np.zeros_like(f.values)
    for j in range(1, f.grid.n + 1):
        fp, fm = _neighbours(f, j)
        out += (fp + fm - 2 * f.values) / h2
    return CliffordField(f.grid, out)


def dirac(f: CliffordField) -> CliffordField:
    """Finite-difference Dirac operator, Clifford coefficients multiplied on the left.

    ``sum_j e_j (f(x+he_j) - f(x-he_j))/2h + e_{n+j} (2f(x) - f(x+he_j) - f(x-he_j))/2h``
    """
    grid = f.grid
    sig = grid.signature
    h = grid.h
    out = np.zeros_like(f.values)
    for j in range(1, grid.n + 1):
        fp, fm = _neighbours(f, j)
        out += left_multiply(generator(sig, j), (fp - fm) / (2 * h), grid.n)
        out += left_multiply(generator(sig, grid.n + j), (2 * f.values - fp - fm) / (2 * h), grid.n)
    return CliffordField(grid, out)


def time_generators(grid: LatticeGrid) -> tuple[Multivector, Multivector]:
    """``(e_0, e_{2n+1} e_0)``, the Clifford constants of the time step."""
    sig = grid.signature
    e0 = generator(sig, 0)
    return e0, generator(sig, sig.g - 1) * e0


def evolution_operator(f: CliffordField, tau: float) -> CliffordField:
    """One-step operator ``A f = 2 tau e_0 D_h f + tau^2 e_{2n+1} e_0 Delta_h f``.

    A solution advances as ``Psi(t + tau) = Psi(t - tau) + A Psi(t)``.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    e0, e_t0 = time_generators(f.grid)
    return (2 * tau) * dirac(f).left_mul(e0) + tau ** 2 * laplacian(f).left_mul(e_t0)


def squared_evolution_operator(f: CliffordField, tau: float) -> CliffordField:
    """Scalar operator ``(-4 tau^2 Delta_h + tau^4 Delta_h^2) f`` equal to ``A(A f)``."""
    lap = laplacian(f)
    return -4 * tau ** 2 * lap + tau ** 4 * laplacian(lap)


def kg_residual(prev: CliffordField, curr: CliffordField, nxt: CliffordField, tau: float) -> float:
    """Sup-norm of ``(next + prev - 2 curr)/tau^2 - Delta_h curr``."""
    curr._check(prev)
    curr._check(nxt)
    second = (nxt.values + prev.values - 2 * curr.values) / tau ** 2
    return float(np.max(np.abs(second - laplacian(curr).values), initial=0.0))


def inner(a: CliffordField, b: CliffordField) -> complex:
    """Site-sum inner product ``sum_x sum_blades conj(a) b``."""
    a._check(b)
    return complex(np.vdot(a.values, b.values))
