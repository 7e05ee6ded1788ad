"""Electromotive-force power spectra and their blockade peaks.

At low temperature the spectrum shows a line near 2 eps on the positive side;
a warmer bath adds the 2 kappa +- eps doublet there as blockade degrades.

Run: python3 demos/05_emf_spectra.py
"""

import numpy as np

from phonon_blockade import model, spectrum

for nbar in (0.01, 0.5):
    res = spectrum.kerr_spectrum(model.ReducedParams.kerr(3.0, 30.0, 0.5, nbar))
    s = res.spectrum
    peaks = spectrum.find_peaks(s, 1e-3 * s.values.max()).within(0, np.inf)
    F = res.rho_ss[0, 0].real + res.rho_ss[1, 1].real
    print(f"nbar={nbar}: dim={res.liouvillian.dim}  F={F:.3f}  <V>={res.correlation.mean:+.4f}")
    for p in peaks:
        print(f"   peak at {p.frequency:7.3f}  height {p.height:.4g}  FWHM {p.width:.3f}")

pred = spectrum.predicted_peaks(3.0, 30.0, 0.5, 0.01)
print("two-level prediction:", np.round(pred.frequencies, 4))
print("three-level prediction:", np.round(spectrum.predicted_peaks(3.0, 30.0, 0.5, 0.01, "three_level").frequencies, 4))
