"""Steady-state electromotive-force correlations and their power spectrum.

``V = i (a^dag - a)`` with the magnetomotive prefactor set to one. The
correlation ``C(tau) = <V(0) V(tau)>`` follows the regression recipe
``Tr[V exp(L tau)(rho_ss V)]``.

Spectra are ``S(w) = int C(tau) exp(+i w tau) dtau`` over the whole lag
axis, with ``C(-tau) = C(tau)^*``. With this kernel, positive ``w`` holds
the emission-type lines: at low temperature only the ``~2 eps`` line
shows there, while the ``2 kappa +- eps`` doublet sits at negative ``w``
and moves to positive ``w`` as the bath population grows. ``sign=-1``
gives the mirror-image convention. The constant ``<V>^2`` part of
``C`` is a delta line at ``w = 0``. It is removed before transforming
and reported as ``coherent_weight``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.signal

from . import fock
from .errors import (
    InvalidArgumentError,
    OverdampedError,
    ShapeMismatchError,
    StaleSteadyStateError,
    TruncatedCorrelationError,
)
from .io import write_csv, write_json
from .lindblad import Liouvillian, kerr_steady_state, slowest_rate, vec
from .model import ReducedParams

N_LAGS = 2 ** 14
DECAY_TOL = 1e-6


@dataclass(frozen=True)
class CorrelationSeries:
    taus: np.ndarray
    values: np.ndarray
    mean: float = 0.0  # steady-state <V>

    @property
    def dtau(self):
        return float(self.taus[1] - self.taus[0])

    @property
    def connected(self):
        return self.values - self.mean ** 2


@dataclass(frozen=True)
class SpectrumSeries:
    omegas: np.ndarray
    values: np.ndarray
    coherent_weight: float = 0.0

    @property
    def domega(self):
        return float(self.omegas[1] - self.omegas[0])


@dataclass(frozen=True)
class Peak:
    frequency: float
    height: float | None = None
    width: float | None = None
    present: bool = True


@dataclass(frozen=True)
class PeakSet:
    peaks: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.peaks)

    def __iter__(self):
        return iter(self.peaks)

    @property
    def frequencies(self):
        return np.array([p.frequency for p in self.peaks])

    def within(self, lo, hi):
        return PeakSet(tuple(p for p in self.peaks if lo <= p.frequency <= hi))


def emf_operator(dim):
    a = fock.annihilation_op(dim)
    return fock._frozen(1j * (fock.dagger(a) - a))


def lag_grid(L: Liouvillian, epsilon, n=N_LAGS, decay_tol=DECAY_TOL):
    """Uniform lags out to ``max(10/gamma, 4 pi/eps, ln(10/decay_tol)/r_min)``.

    ``r_min`` is the slowest Liouvillian relaxation rate. The last term
    makes the connected correlation decay below ``decay_tol`` at the end.
    """
    if L.gamma <= 0:
        raise InvalidArgumentError("a decaying correlation needs gamma > 0")
    tau_max = 10.0 / L.gamma
    if epsilon > 0:
        tau_max = max(tau_max, 4.0 * math.pi / epsilon)
    tau_max = max(tau_max, math.log(10.0 / decay_tol) / slowest_rate(L))
    return np.arange(n) * (tau_max / (n - 1))


def two_time_correlation(rho_ss, L: Liouvillian, V, taus) -> CorrelationSeries:
    rho_ss = np.asarray(rho_ss, dtype=complex)
    V = np.asarray(V, dtype=complex)
    taus = np.asarray(taus, dtype=float)
    if rho_ss.shape != (L.dim, L.dim) or V.shape != rho_ss.shape:
        raise ShapeMismatchError("state, operator and Liouvillian dimensions differ")
    if taus.size < 2 or taus[0] != 0:
        raise InvalidArgumentError("lags must start at 0 and hold at least two points")
    dtau = taus[1] - taus[0]
    if not np.allclose(np.diff(taus), dtau, rtol=1e-9, atol=0):
        raise InvalidArgumentError("lags must be uniformly spaced")
    scale = np.abs(L.matrix).sum(axis=1).max()
    resid = np.linalg.norm(L.matrix @ vec(rho_ss))
    if resid > 1e-8 * scale:
        raise StaleSteadyStateError(f"rho_ss is not stationary under L (residual {resid:.3g})")

    step = scipy.linalg.expm(L.matrix * dtau)
    probe = vec(V.T)
    x = vec(rho_ss @ V)
    out = np.empty(taus.size, dtype=complex)
    for k in range(taus.size):
        out[k] = probe @ x
        x = step @ x
    c0 = fock.expectation(rho_ss, V @ V)
    if abs(out[0] - c0) > 1e-8 * max(1.0, abs(c0)):
        raise StaleSteadyStateError("regression identity C(0) = Tr[V^2 rho] violated")
    mean = fock.expectation(rho_ss, V)
    out.setflags(write=False)
    return CorrelationSeries(taus=taus, values=out, mean=float(np.real(mean)))


def power_spectrum(c: CorrelationSeries, sign=1, decay_tol=DECAY_TOL) -> SpectrumSeries:
    """Discrete transform of the Hermitian-extended connected correlation.

    Frequencies are ascending and cover both signs; ``sum(S) * dw / 2pi``
    reproduces the connected ``C(0)``.
    """
    if sign not in (1, -1):
        raise InvalidArgumentError("sign must be +1 or -1")
    conn = np.asarray(c.connected, dtype=complex)
    if abs(conn[-1]) >= decay_tol * abs(c.values[0]):
        raise TruncatedCorrelationError(
            f"|C(tau_max)| = {abs(conn[-1]):.3g} has not decayed below {decay_tol} * C(0)")
    ext = np.concatenate([conn, [0.0], np.conj(conn[:0:-1])])
    n = ext.size
    dtau = c.dtau
    if sign > 0:
        raw = np.fft.ifft(ext) * (n * dtau)
    else:
        raw = np.fft.fft(ext) * dtau
    omegas = np.fft.fftshift(2.0 * np.pi * np.fft.fftfreq(n, d=dtau))
    raw = np.fft.fftshift(raw)
    peak = np.max(np.abs(raw.real))
    if np.max(np.abs(raw.imag)) > 1e-8 * max(peak, 1e-300):
        raise InvalidArgumentError("spectrum has a non-negligible imaginary part")
    values = np.ascontiguousarray(raw.real)
    values.setflags(write=False)
    return SpectrumSeries(omegas=omegas, values=values, coherent_weight=c.mean ** 2)


def predicted_peaks(epsilon, kappa, gamma, nbar, level="two_level") -> PeakSet:
    """Peak centers of the truncated two- or three-level blockade models.

    ``two_level``: ``0`` (flagged absent for a real drive) and
    ``+-sqrt((8 eps)^2 - gamma^2 (1 + 2 nbar)^2) / 4``.
    ``three_level``: ``0, +-2 eps (1 - d), +-(2 kappa (1 + 6 d) +- eps (1 - d))``
    with ``d = eps^2 / (8 kappa^2)``.
    """
    if level == "two_level":
        rad = (8.0 * epsilon) ** 2 - (gamma * (1.0 + 2.0 * nbar)) ** 2
        if rad < 0:
            raise OverdampedError("no underdamped side peaks: (8 eps)^2 < gamma^2 (1 + 2 nbar)^2")
        w1 = 0.25 * math.sqrt(rad)
        return PeakSet((Peak(-w1), Peak(0.0, present=False), Peak(w1)))
    if level == "three_level":
        d = epsilon ** 2 / (8.0 * kappa ** 2)
        inner = 2.0 * epsilon * (1.0 - d)
        outer = 2.0 * kappa * (1.0 + 6.0 * d)
        split = epsilon * (1.0 - d)
        centers = sorted([0.0, inner, -inner, outer - split, outer + split,
                          -(outer - split), -(outer + split)])
        return PeakSet(tuple(Peak(w) for w in centers))
    raise InvalidArgumentError(f"unknown level {level!r}")


def find_peaks(s: SpectrumSeries, min_prominence) -> PeakSet:
    """Local maxima above ``min_prominence``, centers refined by a parabola through three bins."""
    y = np.asarray(s.values)
    idx, _ = scipy.signal.find_peaks(y, prominence=min_prominence)
    if idx.size == 0:
        return PeakSet()
    widths = scipy.signal.peak_widths(y, idx, rel_height=0.5)[0] * s.domega
    peaks = []
    for i, w in zip(idx, widths):
        f, h = float(s.omegas[i]), float(y[i])
        if 0 < i < y.size - 1:
            ym, y0, yp = y[i - 1], y[i], y[i + 1]
            den = ym - 2.0 * y0 + yp
            if den < 0:
                p = 0.5 * (ym - yp) / den
                f += p * s.domega
                h = y0 - 0.25 * (ym - yp) * p
        peaks.append(Peak(frequency=f, height=h, width=float(w)))
    return PeakSet(tuple(peaks))


@dataclass(frozen=True)
class SpectrumResult:
    params: ReducedParams
    rho_ss: np.ndarray
    liouvillian: Liouvillian
    correlation: CorrelationSeries
    spectrum: SpectrumSeries


def kerr_spectrum(r: ReducedParams, dim=None, n_lags=N_LAGS, sign=1) -> SpectrumResult:
    """Steady state, EMF correlation and spectrum for the rotating-frame Kerr model."""
    rho, L = kerr_steady_state(r, dim=dim, spectrum=True)
    V = emf_operator(L.dim)
    taus = lag_grid(L, r.epsilon, n=n_lags)
    corr = two_time_correlation(rho, L, V, taus)
    return SpectrumResult(params=r, rho_ss=rho, liouvillian=L, correlation=corr,
                          spectrum=power_spectrum(corr, sign=sign))


def write_correlation(c: CorrelationSeries, csv_path, meta=None):
    write_csv(csv_path, ("tau", "re", "im"),
              zip(c.taus, c.values.real, c.values.imag))
    write_json(str(csv_path).rsplit(".", 1)[0] + ".json",
               {"mean_V": c.mean, "n": int(c.taus.size), "dtau": c.dtau, **(meta or {})})


def write_spectrum(s: SpectrumSeries, csv_path, meta=None):
    write_csv(csv_path, ("omega", "S"), zip(s.omegas, s.values))
    write_json(str(csv_path).rsplit(".", 1)[0] + ".json",
               {"coherent_weight": s.coherent_weight, "n": int(s.omegas.size),
                "domega": s.domega, **(meta or {})})
