"""
Mittag-Leffler functions and the Laplace identity
=================================================

``E_{1/2,1/2}`` has the closed form ``1/sqrt(pi) + z exp(z^2) erfc(-z)``.
Integrating ``exp(-p lam^2) p^(beta-1) E(s p^alpha)`` over ``p > 0`` gives
``lam^(-2 beta) / (1 - s lam^(-2 alpha))`` whenever ``lam^2 > |s|^(1/alpha)``.
"""
import math

from discrete_ck import MLParams, laplace_identity_check, ml

half = MLParams(0.5, 0.5)
for z in (-1.0, 0.0, 0.5, 1.0):
    closed = 1 / math.sqrt(math.pi) + z * math.exp(z * z) * math.erfc(-z)
    print(f"E(1/2,1/2)({z:+.1f}) = {ml(half, z):.15f}   closed form {closed:.15f}")

for lam, s in [(1.0, 0.5), (1.5, -0.75), (2.0, 0.0)]:
    lhs, rhs, gap = laplace_identity_check(0.5, 0.5, s, lam, P=40)
    print(f"lam={lam} s={s:+.2f}: integral {lhs:.12f} closed {rhs:.12f} gap {gap:.1e}")
