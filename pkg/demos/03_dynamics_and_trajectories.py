"""Time evolution: undamped Rabi-like oscillation, damped approach to the steady
state, and the same dynamics unraveled into quantum-jump trajectories.

Run: python3 demos/03_dynamics_and_trajectories.py
"""

import numpy as np

from phonon_blockade import fock, lindblad, mcwf, model

# Without damping the blockaded oscillator cycles between |0> and |1>
r = model.ReducedParams.kerr(1.0, 100.0, 0.0, 0.0)
L = lindblad.build_liouvillian(model.build_kerr_hamiltonian(r, 10), 0.0, 0.0)
t = np.linspace(0, np.pi, 7)
obs = lindblad.evolve(fock.fock_dm(0, 10), L, t)
for tk, p1 in zip(t, obs.P[:, 1]):
    print(f"eps t = {tk:5.3f}  P1 = {p1:.5f}  sin^2 = {np.sin(tk) ** 2:.5f}")

# Damped, warm: master equation against 2000 trajectories
r = model.ReducedParams.kerr(3.0, 30.0, 1.0, 0.01)
h = model.build_kerr_hamiltonian(r, 13)
L = lindblad.build_liouvillian(h, r.gamma, r.nbar)
times = np.linspace(0, 5, 6)
me = lindblad.evolve(fock.fock_dm(0, 13), L, times)
trajs = mcwf.run_ensemble(fock.fock_ket(0, 13), h, L.collapse_ops, times, 2000, master_seed=1234, threads=4)
est = mcwf.ensemble_average(trajs)
print("\n  t    P0(ME)  P0(MC) +- se     P1(ME)  P1(MC) +- se")
for k, tk in enumerate(times):
    print(f"{tk:4.1f}  {me.P[k, 0]:.4f}  {est.P_mean[k, 0]:.4f} +- {est.P_stderr[k, 0]:.4f}"
          f"   {me.P[k, 1]:.4f}  {est.P_mean[k, 1]:.4f} +- {est.P_stderr[k, 1]:.4f}")
jumps = [c for tr in trajs for _, c in tr.jumps]
print(f"\nmean jumps per trajectory: {len(jumps) / len(trajs):.2f} (gain jumps: {jumps.count(2)})")
