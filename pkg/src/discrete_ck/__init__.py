"""
Discrete Cauchy-Kovalevskaya extension for a lattice Dirac operator.

Clifford arithmetic in Cl(n+1, n+1), periodic lattice fields, a Fourier
layer with Chebyshev multipliers, four cross-checking solvers, and
numerical checks of the principal-value and Mittag-Leffler representations.
"""
from .chebyshev import (PVQuadratureSpec, cheb_pair, cheb_t, cheb_t_trig, cheb_u, cheb_u_trig,
                        pv_cheb_t, pv_cheb_u, pv_nodes)
from .clifford import (Multivector, Signature, add, blade_product, generator, geometric_product,
                       left_multiply, norm_inf, scalar, scale, witt_pair)
from .exceptions import (CFLError, ConvergenceError, GridMismatchError, NonLatticeTimeError,
                         PoleError, RegionError, SignatureMismatchError)
from .lattice import (CliffordField, LatticeGrid, dirac, evolution_operator, kg_residual, laplacian,
                      shift, squared_evolution_operator, sup_distance)
from .mittag_leffler import (MLParams, aux_h, laplace_identity_check, ml, ml_resolvent,
                             mittag_leffler, resolvent_direct)
from .solvers import (SolveConfig, SolverSpec, Trajectory, bootstrap_first_step, convolution_solve,
                      kernel, leapfrog_solve, series_solve, spacetime_kernel, spectral_solve,
                      subordination_solve)
from .spectral import (MomentumField, cfl_max_tau, forward_dft, inverse_dft, multipliers,
                       propagator_multiplier, series_multiplier)
from .umbral import Polynomial, delta_apply, delta_coefficients, gould, gould_sequence

__version__ = "0.1.0"
