"""Truncated Fock-space algebra: ladder operators, displacements, expectations.

Run: python3 demos/01_fock_operators.py
"""

import numpy as np

from phonon_blockade import fock

dim = 8
a = fock.annihilation_op(dim)
comm = a @ fock.dagger(a) - fock.dagger(a) @ a
# [a, a^dag] is the identity except in the last level, where the cutoff bites
print("diag [a, a^dag]:", np.round(np.diag(comm).real, 12))

# A coherent state built by displacing the vacuum
alpha = 0.6 + 0.3j
psi = fock.displacement_op(alpha, 40) @ fock.fock_ket(0, 40)
print("<a> for D(alpha)|0>:", np.round(fock.expectation(psi, fock.annihilation_op(40)), 10))
print("<n> for D(alpha)|0>:", round(fock.expectation(psi, fock.number_op(40)), 10), "vs |alpha|^2 =", abs(alpha) ** 2)

# Thermal state occupation
print("thermal <n> at nbar=0.5:", round(fock.expectation(fock.thermal_dm(0.5, 40), fock.number_op(40)), 6))
