"""
Clifford arithmetic with bitmask blades
=======================================

Blades of Cl(n+1, n+1) are stored as integer bitmasks.  Generators
``0..n`` square to -1 and ``n+1..2n+1`` square to +1.
"""
from discrete_ck import Signature, generator, witt_pair

sig = Signature(1)
e = [generator(sig, j) for j in range(sig.g)]

# squares and anticommutators
for j, ej in enumerate(e):
    print(f"e{j}^2 =", (ej * ej).scalar_part().real)
print("e0 e1 + e1 e0 =", e[0] * e[1] + e[1] * e[0])

# the Witt pair built from e0 and the last generator is nilpotent
ep, em = witt_pair(sig)
print("e+^2 =", ep * ep, " e-^2 =", em * em)
print("e+ e- + e- e+ =", ep * em + em * ep)
