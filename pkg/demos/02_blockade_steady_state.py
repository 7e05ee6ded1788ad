"""Steady-state phonon blockade and its dependence on temperature and Kerr strength.

Builds the rotating-frame Kerr oscillator, solves the thermal master equation
for its fixed point and prints the blockade fidelity F = P0 + P1.

Run: python3 demos/02_blockade_steady_state.py
"""

import numpy as np

from phonon_blockade import lindblad, model

r = model.ReducedParams.kerr(epsilon=3.0, kappa=30.0, gamma=1.0, nbar=0.01)
rho, L = lindblad.kerr_steady_state(r)
P = np.diag(rho).real
print(f"dim={L.dim}  P0={P[0]:.4f}  P1={P[1]:.4f}  P2={P[2]:.2e}  F={P[0] + P[1]:.4f}")
print(f"coherence <0|rho|1> = {rho[0, 1]:.4f}")

print("\nF against beta = omega/T (kappa = 10 eps):")
for beta in (0.5, 1.0, 2.0, 4.6, 8.0):
    rb, _ = lindblad.kerr_steady_state(model.ReducedParams.kerr(3.0, 30.0, 1.0, model.nbar_from_beta(beta)))
    print(f"  beta={beta:4.1f}  nbar={model.nbar_from_beta(beta):.4f}  F={rb[0, 0].real + rb[1, 1].real:.4f}")

print("\nF against kappa/gamma at nbar = 0.01:")
for k in (1, 3, 5, 8, 10, 30, 60):
    rk, _ = lindblad.kerr_steady_state(model.ReducedParams.kerr(3.0, k, 1.0, 0.01))
    print(f"  kappa={k:3d}  F={rk[0, 0].real + rk[1, 1].real:.4f}")
