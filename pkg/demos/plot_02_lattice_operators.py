"""
Lattice Dirac operator and its square
=====================================

On a periodic lattice the Dirac operator squares to minus the
Laplacian, and the one-step operator of the time evolution squares to a
scalar polynomial in the Laplacian.
"""
import numpy as np

from discrete_ck import CliffordField, LatticeGrid, dirac, evolution_operator, laplacian, sup_distance

rng = np.random.default_rng(0)
grid = LatticeGrid(2, 8, 0.5)
f = CliffordField.random(grid, rng, blades=[0, 3, 12])

print("|D^2 f + Lap f|       =", sup_distance(dirac(dirac(f)), -laplacian(f)))

tau = 0.1
lap = laplacian(f)
rhs = -4 * tau ** 2 * lap + tau ** 4 * laplacian(lap)
print("|A^2 f - (-4t^2 Lap + t^4 Lap^2) f| =", sup_distance(evolution_operator(evolution_operator(f, tau), tau), rhs))
