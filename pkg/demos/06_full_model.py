"""From device parameters to the Kerr model, and a check against the full
qubit-resonator Hamiltonian.

The dressed-ladder anharmonicity matches 2 kappa near delta/g = 5 with
Omega = 20 g^2/delta. Further out along that line it changes sign and
approaches -kappa, so the leading-order Kerr constant is only a local
guide to the full model.

Run: python3 demos/06_full_model.py
"""

from phonon_blockade import model

# GHz-scale device numbers: g = 0.2, Omega = 0.2, delta = 1
p = model.PhysicalParams(E_c=0.05, N_x=1.0, X_0=1.0, d=1.0, B=0.0, I_0=0.0, L=1.0,
                         omega=1.0, omega_0=2.0, Omega=0.2)
r = model.map_physical_params(p)
print(f"g={r.g:.3f}  delta={r.delta:.3f}  kappa={r.kappa * 1e3:.2f} MHz  omega_bar={r.omega_bar:.5f}")
print("regime:", r.regime_flags)

print("\ndelta/g  anharmonicity  2 kappa   ratio")
g = 0.2
for ratio in (5, 8, 12, 20):
    delta = ratio * g
    Omega = 20 * g ** 2 / delta
    a = model.ladder_anharmonicity(model.physical_params_for(g, delta, Omega))
    k2 = 2 * model.kerr_constant(g, Omega, delta)
    print(f"{ratio:7d}  {a:13.6f}  {k2:8.6f}  {a / k2:5.2f}")
