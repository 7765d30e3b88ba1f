"""
Chebyshev polynomials as principal-value integrals
==================================================

``T_k(lam)`` and ``U_{k-1}(lam)`` are recovered from principal-value
integrals over ``theta`` with a pole at ``acos(lam)``.  The error falls
as the number of midpoint panels doubles.
"""
from discrete_ck import PVQuadratureSpec, cheb_pair, pv_cheb_t, pv_cheb_u

k, lam = 5, 0.37
T, U = cheb_pair(k, lam)
print(f"recurrence: T_{k}={T:.12f} U_{k - 1}={U:.12f}")
for p in range(6, 15, 2):
    spec = PVQuadratureSpec(1 << p)
    t_err = abs(pv_cheb_t(k, lam, spec, check=False) - T)
    u_err = abs(pv_cheb_u(k, lam, spec, check=False) - U)
    print(f"M=2^{p:<2d}  |T err|={t_err:.2e}  |U err|={u_err:.2e}")
