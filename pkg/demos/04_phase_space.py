"""Quasiprobability maps of the blockade steady state.

The Wigner function (s = 0) stays non-negative, while the s = 1/2 map dips
below zero near the origin, certifying a nonclassical state. Maps are
written as CSV with a JSON sidecar.

Run: python3 demos/04_phase_space.py [out_dir]
"""

import os
import sys

from phonon_blockade import lindblad, model, qpd

out = sys.argv[1] if len(sys.argv) > 1 else "demo_out"
rho, _ = lindblad.kerr_steady_state(model.ReducedParams.kerr(3.0, 30.0, 1.0, 0.01))
grid = qpd.PhaseSpaceGrid()
for s in (-1.0, 0.0, 0.5):
    m = qpd.qpd_grid(rho, grid, s)
    w = qpd.negativity_witness(m)
    print(f"s={s:+.1f}  min={m.min_value:+.4g} at {m.argmin:.2f}  norm={m.normalization:.4f}  negative={w.is_negative}")
    qpd.write_qpd(m, os.path.join(out, f"qpd_s{s:g}.csv"))
print("maps written to", out)
