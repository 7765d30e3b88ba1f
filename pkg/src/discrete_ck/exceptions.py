"""Exception types raised by the library."""


class SignatureMismatchError(ValueError):
    """Two Clifford objects live in algebras of different dimension."""


class GridMismatchError(ValueError):
    """Fields defined on different lattices were combined."""


class CFLError(ValueError):
    """Time step violates d_h(xi)^2 * tau^2 <= 2(sqrt(2) - 1) somewhere on the dual lattice."""


class NonLatticeTimeError(ValueError):
    """Requested time is not a nonnegative integer multiple of tau."""


class ConvergenceError(RuntimeError):
    """A series or quadrature failed its convergence check."""


class PoleError(ZeroDivisionError):
    """Evaluation point sits on the pole cos(omega*tau) = lambda."""


class RegionError(ValueError):
    """Parameters lie outside the region where an integral representation converges."""
