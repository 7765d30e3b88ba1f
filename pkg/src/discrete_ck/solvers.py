"""
Propagation pathways for the lattice Cauchy problem ``Psi(., 0) = Phi0``.

Each solver is implemented independently so they can be checked against
one another:

* :func:`leapfrog_solve` -- two-level recursion ``Psi(t+tau) = Psi(t-tau) + A Psi(t)``
  started from the spectral ``t = tau`` slice.
* :func:`spectral_solve` -- Chebyshev Fourier multiplier
  ``T_k(lam) + U_{k-1}(lam) B(xi)``.
* :func:`series_solve` -- truncated Gould-polynomial series in powers of ``A``.
* :func:`convolution_solve` -- periodic convolution with the kernel table.
* :func:`spacetime_kernel` -- the kernel at one point from principal-value
  omega-integrals of the resolvent.
* :func:`subordination_solve` -- Mittag-Leffler/heat-type representation of
  the resolvent where it converges, with per-mode diagnostics.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import fieldio
from .chebyshev import cheb_pair, pv_nodes
from .clifford import left_multiply
from .lattice import CliffordField, LatticeGrid, evolution_operator, squared_evolution_operator
from .mittag_leffler import HALF, MLParams, gauss_legendre, ml
from .spectral import (MomentumField, check_cfl, forward_dft, inverse_dft, lattice_steps,
                       multipliers, propagator_multiplier, spectral_apply)
from .umbral import gould_weights

SOLVERS = ("leapfrog", "spectral", "series", "convolution", "subordination")

#: exp(-P (lam^2 - cos^2)) must fall below exp(-ML_DECAY) on the ML part
ML_DECAY = math.log(1e12)


@dataclass(frozen=True)
class SolverSpec:
    """Solver name plus its numeric parameters, e.g. ``series:20``."""

    name: str
    params: tuple = ()

    @classmethod
    def parse(cls, text: str) -> SolverSpec:
        name, _, rest = text.strip().partition(":")
        name = name.strip().lower()
        if name not in SOLVERS:
            raise ValueError(f"unknown solver {name!r}; choose from {', '.join(SOLVERS)}")
        vals = [v for v in rest.split(",") if v.strip()] if rest else []
        if name == "series":
            if len(vals) > 1:
                raise ValueError("series takes one parameter K")
            K = int(vals[0]) if vals else 20
            if K < 0:
                raise ValueError("series order K must be >= 0")
            return cls(name, (K,))
        if name == "subordination":
            defaults = (40.0, 96, 2048)
            if len(vals) > 3:
                raise ValueError("subordination takes P,Mp,Momega")
            P = float(vals[0]) if vals else defaults[0]
            Mp = int(vals[1]) if len(vals) > 1 else defaults[1]
            Mw = int(vals[2]) if len(vals) > 2 else defaults[2]
            if P <= 0 or Mp < 1 or Mw < 2:
                raise ValueError("subordination needs P > 0, Mp >= 1, Momega >= 2")
            return cls(name, (P, Mp, Mw))
        if vals:
            raise ValueError(f"solver {name!r} takes no parameters")
        return cls(name, ())

    def __str__(self):
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(str(p) for p in self.params)


def realize_initial(initial, grid: LatticeGrid) -> CliffordField:
    """Turn a datum description into a field.

    Accepts a :class:`CliffordField` or one of ``delta``,
    ``gaussian:sigma``, ``planewave:k1[,k2...]``, ``file:path``.
    """
    if isinstance(initial, CliffordField):
        if initial.grid != grid:
            raise ValueError("initial field lives on a different grid")
        return initial
    kind, _, arg = str(initial).partition(":")
    kind = kind.strip().lower()
    if kind == "delta":
        return CliffordField.delta(grid)
    if kind == "gaussian":
        return CliffordField.gaussian(grid, float(arg) if arg else 1.0)
    if kind == "planewave":
        k = [int(v) for v in arg.split(",")] if arg else [1]
        if len(k) > grid.n:
            raise ValueError(f"planewave index has {len(k)} entries for n = {grid.n}")
        return CliffordField.planewave(grid, k)
    if kind == "file":
        if not arg:
            raise ValueError("file datum needs a path")
        return fieldio.read_field_csv(arg, grid)
    raise ValueError(f"unknown initial datum {initial!r}")


@dataclass(frozen=True, eq=False)
class SolveConfig:
    grid: LatticeGrid
    tau: float
    steps: int = 0
    initial: object = "delta"
    solver: SolverSpec = SolverSpec("spectral")

    def __post_init__(self):
        if isinstance(self.solver, str):
            object.__setattr__(self, "solver", SolverSpec.parse(self.solver))
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 0:
            raise ValueError(f"steps must be a nonnegative integer, got {self.steps!r}")
        # every pathway needs the Chebyshev argument in [0, 1] (leapfrog for its bootstrap)
        check_cfl(self.grid, self.tau)

    @property
    def phi0(self) -> CliffordField:
        return realize_initial(self.initial, self.grid)


@dataclass(frozen=True)
class Trajectory:
    """Slices at ``t = 0, tau, 2 tau, ...``."""

    tau: float
    slices: tuple

    def __post_init__(self):
        if not self.slices:
            raise ValueError("a trajectory needs at least the initial slice")
        g = self.slices[0].grid
        if any(s.grid != g for s in self.slices):
            raise ValueError("all slices must share one grid")

    def __len__(self):
        return len(self.slices)

    def __getitem__(self, i) -> CliffordField:
        return self.slices[i]

    def __iter__(self):
        return iter(self.slices)

    @property
    def times(self) -> np.ndarray:
        return self.tau * np.arange(len(self.slices))

    @property
    def grid(self) -> LatticeGrid:
        return self.slices[0].grid


# ----------------------------------------------------------------------
# leapfrog and spectral


def bootstrap_first_step(phi0: CliffordField, grid: LatticeGrid, tau: float) -> CliffordField:
    """``Psi(., tau)`` from the Chebyshev multiplier at ``t = tau`` (``T_1 = lam``, ``U_0 = 1``)."""
    if phi0.grid != grid:
        raise ValueError("datum lives on a different grid")
    mult = multipliers(grid, tau)
    return spectral_apply(phi0, propagator_multiplier(mult, tau, tau))


def leapfrog_solve(cfg: SolveConfig, first: CliffordField | None = None) -> Trajectory:
    """Two-level recursion; ``first`` overrides the spectral bootstrap slice."""
    phi0 = cfg.phi0
    slices = [phi0]
    if cfg.steps >= 1:
        slices.append(first if first is not None else bootstrap_first_step(phi0, cfg.grid, cfg.tau))
    for _ in range(1, cfg.steps):
        slices.append(slices[-2] + evolution_operator(slices[-1], cfg.tau))
    return Trajectory(cfg.tau, tuple(slices))


def spectral_solve(cfg: SolveConfig, t: float) -> CliffordField:
    lattice_steps(t, cfg.tau)
    mult = multipliers(cfg.grid, cfg.tau)
    return spectral_apply(cfg.phi0, propagator_multiplier(mult, cfg.tau, t))


def spectral_trajectory(cfg: SolveConfig) -> Trajectory:
    mult = multipliers(cfg.grid, cfg.tau)
    F = forward_dft(cfg.phi0)
    slices = [cfg.phi0]
    for k in range(1, cfg.steps + 1):
        m = propagator_multiplier(mult, cfg.tau, k * cfg.tau)
        slices.append(inverse_dft(MomentumField(cfg.grid, left_multiply(m, F.values, cfg.grid.n))))
    return Trajectory(cfg.tau, tuple(slices))


# ----------------------------------------------------------------------
# Gould series


def series_solve(cfg: SolveConfig, t: float, K: int = 20, diagnostics: bool = False):
    """``sum_{k<=K} G_k(t)/k! A^k Phi0`` using ``A^2 = -4 tau^2 Delta_h + tau^4 Delta_h^2``.

    Even powers come from repeated application of the scalar operator
    ``A^2``; the odd ones share a single final application of ``A``.  With
    ``diagnostics`` the sup norm of the last nonzero term is returned as
    well, as a truncation indicator.
    """
    k_steps = lattice_steps(t, cfg.tau)
    if K < 0:
        raise ValueError("K must be >= 0")
    w = gould_weights(k_steps * cfg.tau, cfg.tau, K)
    power = cfg.phi0                      # (A^2)^m Phi0
    even = CliffordField.zeros(cfg.grid)
    odd = CliffordField.zeros(cfg.grid)
    last = 0.0
    for m in range(K // 2 + 1):
        if m > 0:
            power = squared_evolution_operator(power, cfg.tau)
        if w[2 * m]:
            even = even + w[2 * m] * power
            last = abs(w[2 * m]) * power.sup_norm()
        if 2 * m + 1 <= K and w[2 * m + 1]:
            odd = odd + w[2 * m + 1] * power
    odd_part = evolution_operator(odd, cfg.tau)
    out = even + odd_part
    if diagnostics:
        if K % 2 == 1 and w[K]:
            last = abs(w[K]) * evolution_operator(power, cfg.tau).sup_norm()
        return out, {"last_term_sup": last, "K": K}
    return out


# ----------------------------------------------------------------------
# kernel and convolution


def _kernel_from_multiplier(grid: LatticeGrid, mult_array: np.ndarray) -> CliffordField:
    # inverse_dft already carries (2 pi)^(-n/2) dxi; one more factor gives (2 pi)^(-n)
    field_ = inverse_dft(MomentumField(grid, mult_array))
    return (2 * np.pi) ** (-grid.n / 2) * field_


def kernel(cfg: SolveConfig, t: float) -> CliffordField:
    """``K(x, t) = (2 pi)^(-n) sum_xi M(xi, t) exp(-i x.xi) dxi`` on every site."""
    mult = multipliers(cfg.grid, cfg.tau)
    return _kernel_from_multiplier(cfg.grid, propagator_multiplier(mult, cfg.tau, t))


def convolve(K: CliffordField, phi0: CliffordField) -> CliffordField:
    """``sum_y h^n K(x - y) Phi0(y)`` by direct periodic summation, ``K`` on the left."""
    grid = K.grid
    out = np.zeros(grid.field_shape, dtype=complex)
    flat = phi0.values.reshape(-1, phi0.values.shape[-1])
    for idx in np.flatnonzero(np.any(flat != 0, axis=1)):
        y = np.unravel_index(idx, grid.shape)
        shifted = np.roll(K.values, shift=tuple(int(c) for c in y), axis=tuple(range(grid.n)))
        out += left_multiply(shifted, phi0.values[y], grid.n)
    return CliffordField(grid, grid.cell_volume * out)


def convolution_solve(cfg: SolveConfig, t: float) -> CliffordField:
    return convolve(kernel(cfg, t), cfg.phi0)


def spacetime_kernel(cfg: SolveConfig, x, t: float, M_omega: int = 1 << 14):
    """Kernel at one site from principal-value omega-integrals of the resolvent.

    ``tau/(2 pi)^(n+1) sum_xi dxi PV int numerator/(cos(w tau) - lam) exp(-i(w t + x.xi)) dw``.
    The omega-integral depends on ``xi`` only through ``lam`` and ``B(xi)``:
    folding ``w -> -w`` it is ``(2 pi/tau) (I_T(lam) + I_U(lam) B)`` with
    ``I_T, I_U`` the PV forms of ``T_k`` and ``U_{k-1}``, evaluated once per
    distinct ``lam``.  Returns a :class:`Multivector`.
    """
    from .clifford import Multivector

    grid = cfg.grid
    k = lattice_steps(t, cfg.tau)
    mult = multipliers(grid, cfg.tau)
    lam = mult.lam
    keys = np.round(lam, 14)
    uniq, inverse = np.unique(keys, return_inverse=True)
    IT = np.empty(len(uniq))
    IU = np.empty(len(uniq))
    for i in range(len(uniq)):
        IT[i], IU[i] = _pv_chebyshev_channels(k, float(lam.ravel()[inverse.ravel() == i][0]), M_omega)
    IT = IT[inverse].reshape(lam.shape)
    IU = IU[inverse].reshape(lam.shape)
    per_mode = IU[..., None] * mult.b()
    per_mode[..., 0] += IT
    x = np.atleast_1d(np.asarray(x, dtype=float))
    phase = np.exp(-1j * sum(xj * xi for xj, xi in zip(x, grid.xi_mesh())))
    axes = tuple(range(grid.n))
    # tau/(2pi)^(n+1) * (2pi/tau) = (2pi)^(-n)
    total = (2 * np.pi) ** (-grid.n) * grid.dual_volume * np.sum(per_mode * phase[..., None], axis=axes)
    return Multivector.from_dense(grid.signature, total)


def _pv_chebyshev_channels(k: int, lam: float, M: int) -> tuple[float, float]:
    """``(1/pi) PV int_0^pi (-sin th sin k th, cos k th)/(cos th - lam) dth``."""
    if lam >= 1 - 1e-15:
        # xi = 0: the sine channel is regular and the cosine channel meets B = 0
        theta = (np.arange(M) + 0.5) * (np.pi / M)
        den = -2 * np.sin(theta / 2) ** 2
        IT = np.sum(-np.sin(theta) * np.sin(k * theta) / den) / M
        return float(IT), float(k)
    theta, w = pv_nodes(lam, M)
    inv = w / (np.cos(theta) - lam) / np.pi
    return float(np.sum(-np.sin(theta) * np.sin(k * theta) * inv)), float(np.sum(np.cos(k * theta) * inv))


# ----------------------------------------------------------------------
# subordination


@dataclass(frozen=True)
class _MLTable:
    """Mode-independent pieces: omega midpoints, u = sqrt(p) Gauss nodes, E(u cos th)."""

    theta: np.ndarray
    H: float
    u: np.ndarray
    w: np.ndarray
    E: np.ndarray


@lru_cache(maxsize=8)
def _ml_table(P: float, M_p: int, M_omega: int) -> _MLTable:
    H = np.pi / M_omega
    theta = (np.arange(M_omega) + 0.5) * H
    u, w = gauss_legendre(0.0, math.sqrt(P), M_p)
    E = ml(MLParams(HALF, HALF), np.multiply.outer(u, np.cos(theta)))
    return _MLTable(theta, H, u, w, E)


def convergent_window(lam: float, P: float, M_omega: int):
    """Panel range ``[i_lo, i_hi)`` of the omega grid on which the ML part is used.

    The window is ``|cos th| <= c`` with ``c^2 = lam^2 - ML_DECAY/P``, shrunk
    to whole midpoint panels.  ``None`` means the Laplace representation
    cannot be truncated at ``P`` for this ``lam`` (mode flagged).
    """
    c2 = lam * lam - ML_DECAY / P
    if c2 <= 0:
        return None
    H = np.pi / M_omega
    th = math.acos(min(1.0, math.sqrt(c2)))
    i_lo = math.ceil(th / H - 1e-12)
    i_hi = math.floor((np.pi - th) / H + 1e-12)
    if i_lo >= i_hi:
        return None
    return i_lo, i_hi


def subordinated_chebyshev(k: int, lam: float, P: float = 40.0, M_p: int = 96,
                           M_omega: int = 2048) -> tuple[float, float, bool, float]:
    """``(T_k(lam), U_{k-1}(lam))`` with the resolvent replaced by its ML form where it converges.

    The folded omega-range ``[0, pi]`` (``theta = w tau``) is split into a
    window ``|cos th| <= c`` handled by the Laplace/Mittag-Leffler
    representation, a piece containing the pole handled by the PV rule, and
    a regular tail.  Returns ``(T, U, converged, ml_fraction)``; when the
    window is empty the recurrence values are returned with
    ``converged = False``.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return 1.0, 0.0, True, 0.0
    win = convergent_window(lam, P, M_omega)
    if win is None:
        T, U = cheb_pair(k, lam)
        return float(T), float(U), False, 0.0
    tab = _ml_table(float(P), int(M_p), int(M_omega))
    i_lo, i_hi = win
    th, H = tab.theta, tab.H
    cT = -np.sin(th) * np.sin(k * th)
    cU = np.cos(k * th)
    sl = slice(i_lo, i_hi)
    heat = tab.w * np.exp(-(tab.u * lam) ** 2)
    # 1/(cos th - lam) = -2 int_0^inf exp(-u^2 lam^2) E(u cos th) du
    rowT = tab.E[:, sl] @ cT[sl] * H
    rowU = tab.E[:, sl] @ cU[sl] * H
    T = -2 * heat @ rowT
    U = -2 * heat @ rowU
    # pole piece [0, i_lo H]
    a = i_lo * H
    at_origin = lam >= 1 - 1e-15
    if at_origin:
        # only xi = 0 has lam = 1; there B = 0, so the cosine channel is not needed
        den = -2 * np.sin(th[:i_lo] / 2) ** 2
        T += np.sum(cT[:i_lo] / den) * H
    else:
        tp, wp = pv_nodes(lam, max(2, i_lo), 0.0, a)
        inv = wp / (np.cos(tp) - lam)
        T += np.sum(-np.sin(tp) * np.sin(k * tp) * inv)
        U += np.sum(np.cos(k * tp) * inv)
    # regular tail [i_hi H, pi]
    tail = slice(i_hi, None)
    inv = H / (np.cos(th[tail]) - lam)
    T += np.sum(cT[tail] * inv)
    U += np.sum(cU[tail] * inv)
    frac = (i_hi - i_lo) * H / np.pi
    U_val = float(k) if at_origin else float(U / np.pi)
    return float(T / np.pi), U_val, True, frac


@dataclass(frozen=True, eq=False)
class SubordinationResult:
    field: CliffordField
    converged: np.ndarray = field(repr=False)
    ml_fraction: np.ndarray = field(repr=False)
    multiplier_gap: np.ndarray = field(repr=False)

    @property
    def flagged_modes(self) -> list[tuple[int, ...]]:
        return [tuple(int(i) for i in idx) for idx in zip(*np.nonzero(~self.converged))]

    def summary(self) -> dict:
        return {
            "modes": int(self.converged.size),
            "flagged": len(self.flagged_modes),
            "flagged_modes": self.flagged_modes,
            "min_ml_fraction": float(self.ml_fraction[self.converged].min()) if self.converged.any() else 0.0,
            "max_multiplier_gap": float(self.multiplier_gap.max()),
        }


def subordination_solve(cfg: SolveConfig, t: float, P: float = 40.0, M_p: int = 96,
                        M_omega: int = 2048) -> SubordinationResult:
    """Propagate through the heat-type (Mittag-Leffler) representation of the resolvent.

    Per distinct ``lam`` the Chebyshev pair is rebuilt by
    :func:`subordinated_chebyshev`; modes without a convergent window use
    the recurrence and are flagged.  ``multiplier_gap`` records, per mode,
    the sup-norm distance of the rebuilt multiplier to the exact one.
    """
    grid = cfg.grid
    k = lattice_steps(t, cfg.tau)
    mult = multipliers(grid, cfg.tau)
    lam = mult.lam
    keys = np.round(lam, 14)
    uniq, inverse = np.unique(keys, return_inverse=True)
    inverse = inverse.reshape(lam.shape)
    T = np.empty(lam.shape)
    U = np.empty(lam.shape)
    ok = np.empty(lam.shape, dtype=bool)
    frac = np.empty(lam.shape)
    for i in range(len(uniq)):
        sel = inverse == i
        lv = float(lam[sel][0])
        T[sel], U[sel], ok[sel], frac[sel] = subordinated_chebyshev(k, lv, P, M_p, M_omega)
    m = U[..., None] * mult.b()
    m[..., 0] += T
    exact = propagator_multiplier(mult, cfg.tau, t)
    gap = np.max(np.abs(m - exact), axis=-1)
    out = spectral_apply(cfg.phi0, m)
    return SubordinationResult(out, ok, frac, gap)


# ----------------------------------------------------------------------
# dispatch


def solve(cfg: SolveConfig) -> Trajectory:
    """Full trajectory ``0..steps`` with the configured solver."""
    name, params = cfg.solver.name, cfg.solver.params
    if name == "leapfrog":
        return leapfrog_solve(cfg)
    if name == "spectral":
        return spectral_trajectory(cfg)
    times = [k * cfg.tau for k in range(cfg.steps + 1)]
    if name == "series":
        return Trajectory(cfg.tau, tuple(series_solve(cfg, t, params[0]) for t in times))
    if name == "convolution":
        return Trajectory(cfg.tau, tuple(convolution_solve(cfg, t) for t in times))
    if name == "subordination":
        return Trajectory(cfg.tau, tuple(subordination_solve(cfg, t, *params).field for t in times))
    raise ValueError(f"no dispatcher for {name}")  # pragma: no cover
