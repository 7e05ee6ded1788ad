"""Device parameters, the effective Kerr model and the qubit-resonator Hamiltonians.

Units: hbar = k_B = 1 and every frequency is an angular frequency.
Quoted "GHz"/"MHz" numbers are used as-is, without factors of 2*pi.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import fock
from .errors import (
    DegenerateDriveError,
    DispersiveSingularityError,
    FrameMismatchError,
    InvalidArgumentError,
    InvalidDimensionError,
)

# Regime thresholds; the source only states inequalities.
RWA_MIN_DETUNING_RATIO = 3.0
RWA_MAX_DETUNING_RATIO = 20.0
DISPERSIVE_MIN_DETUNING_RATIO = 3.0
DRESSED_MIN_RATIO = 10.0
WEAK_DRIVE_MAX_RATIO = 0.1

Frame = Literal["resonant_rotating", "lab_effective"]


@dataclass(frozen=True)
class PhysicalParams:
    """Device-level parameters of the qubit plus nanomechanical resonator.

    ``T`` is the bath temperature expressed as an energy (k_B T), in the same
    angular-frequency units as ``omega``. ``X_0`` is the zero-point amplitude
    sqrt(hbar / 2 m omega); mass enters only through it.
    """

    E_c: float
    N_x: float
    X_0: float
    d: float
    B: float
    I_0: float
    L: float
    omega: float
    omega_0: float
    Omega: float
    omega_2: float | None = None
    T: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not self.omega > 0 or not self.omega_0 > 0:
            raise InvalidArgumentError("omega and omega_0 must be positive")
        if self.Omega < 0:
            raise InvalidArgumentError("Omega must be non-negative")
        if self.gamma < 0 or self.T < 0:
            raise InvalidArgumentError("gamma and T must be non-negative")
        if self.d == 0:
            raise InvalidArgumentError("qubit-resonator distance d must be nonzero")


@dataclass(frozen=True)
class RegimeFlags:
    rwa_ok: bool
    dispersive_ok: bool
    dressed_ok: bool
    weak_drive_ok: bool


@dataclass(frozen=True)
class ReducedParams:
    """Parameters of the effective driven Kerr oscillator.

    ``epsilon`` is stored as a magnitude; the sign of the bare probe
    coupling lives in ``epsilon_sign`` and only enters the Hamiltonian.
    ``g`` and ``delta`` are ``None`` when the record was built directly from
    Kerr-model numbers rather than from device parameters.
    """

    kappa: float
    epsilon: float
    gamma: float
    nbar: float
    omega_bar: float = 0.0
    delta: float | None = None
    g: float | None = None
    epsilon_sign: int = 1
    omega_2: float | None = None
    regime_flags: RegimeFlags = field(default=None)

    def __post_init__(self):
        if self.nbar < 0 or self.gamma < 0 or self.epsilon < 0:
            raise InvalidArgumentError("nbar, gamma and epsilon magnitude must be non-negative")
        if self.epsilon_sign not in (1, -1):
            raise InvalidArgumentError("epsilon_sign must be +1 or -1")
        if self.regime_flags is None:
            object.__setattr__(self, "regime_flags", regime_flags(
                self.g, self.delta, None, self.epsilon, self.kappa))

    @classmethod
    def kerr(cls, epsilon, kappa, gamma, nbar=0.0, epsilon_sign=1):
        """Record for the rotating-frame Kerr model given directly in model units."""
        return cls(kappa=kappa, epsilon=abs(epsilon), gamma=gamma, nbar=nbar,
                   epsilon_sign=epsilon_sign if epsilon >= 0 else -epsilon_sign)

    @property
    def signed_epsilon(self):
        return self.epsilon_sign * self.epsilon


@dataclass(frozen=True)
class HamiltonianSpec:
    """Declarative Hamiltonian ``H(t) = static + sum_k op_k * exp(-1j * f_k * t)``.

    ``drive_terms`` pairs an operator with its (possibly complex) frequency
    ``f_k``. Hermiticity of ``H(t)`` requires the terms to come in
    conjugate pairs; builders in this module always emit them that way.
    """

    static: np.ndarray
    drive_terms: tuple = ()

    @property
    def dim(self):
        return self.static.shape[0]

    @property
    def is_time_dependent(self):
        return len(self.drive_terms) > 0

    def at(self, t):
        h = np.array(self.static, dtype=complex)
        for op, f in self.drive_terms:
            h += op * np.exp(-1j * f * t)
        return h


def thermal_occupation(omega, T):
    """Bose-Einstein occupation 1 / (exp(omega / T) - 1), zero at T = 0."""
    if T < 0:
        raise InvalidArgumentError("temperature must be non-negative")
    if T == 0:
        return 0.0
    return 1.0 / math.expm1(omega / T)


def nbar_from_beta(beta):
    """Thermal occupation for the inverse reduced temperature beta = omega / T."""
    if beta <= 0:
        raise InvalidArgumentError("beta must be positive")
    return 1.0 / math.expm1(beta)


def regime_flags(g, delta, Omega, epsilon, kappa):
    weak = bool(epsilon <= WEAK_DRIVE_MAX_RATIO * kappa)
    if g is None or delta is None or g == 0:
        # No qubit picture to judge; the remaining approximations are not in play.
        return RegimeFlags(rwa_ok=True, dispersive_ok=True, dressed_ok=True, weak_drive_ok=weak)
    ratio = abs(delta) / abs(g)
    dressed = True if Omega is None else bool(Omega >= DRESSED_MIN_RATIO * g ** 2 / abs(delta))
    return RegimeFlags(
        rwa_ok=bool(RWA_MIN_DETUNING_RATIO <= ratio <= RWA_MAX_DETUNING_RATIO),
        dispersive_ok=bool(ratio >= DISPERSIVE_MIN_DETUNING_RATIO),
        dressed_ok=dressed,
        weak_drive_ok=weak,
    )


def coupling_strength(E_c, N_x, X_0, d):
    """Qubit-resonator coupling g = 4 E_c N_x X_0 / d."""
    return 4.0 * E_c * N_x * X_0 / d


def probe_strength(B, I_0, L, X_0):
    """Signed probe coupling epsilon = -B I_0 L X_0."""
    return -B * I_0 * L * X_0


def kerr_constant(g, Omega, delta):
    """Induced phonon self-interaction kappa = g^4 / (Omega delta^2)."""
    if delta == 0:
        raise DispersiveSingularityError("detuning delta = omega_0 - omega is zero")
    if Omega == 0:
        raise DegenerateDriveError("Rabi frequency Omega is zero")
    return g ** 4 / (Omega * delta ** 2)


def map_physical_params(p: PhysicalParams) -> ReducedParams:
    delta = p.omega_0 - p.omega
    g = coupling_strength(p.E_c, p.N_x, p.X_0, p.d)
    kappa = kerr_constant(g, p.Omega, delta)
    eps = probe_strength(p.B, p.I_0, p.L, p.X_0)
    omega_bar = p.omega + kappa - g ** 2 / delta
    return ReducedParams(
        kappa=kappa,
        epsilon=abs(eps),
        epsilon_sign=-1 if eps < 0 else 1,
        gamma=p.gamma,
        nbar=thermal_occupation(p.omega, p.T),
        omega_bar=omega_bar,
        delta=delta,
        g=g,
        omega_2=p.omega_2,
        regime_flags=regime_flags(g, delta, p.Omega, abs(eps), kappa),
    )


def build_kerr_hamiltonian(r: ReducedParams, dim: int,
                           frame: Frame = "resonant_rotating") -> HamiltonianSpec:
    """Driven Kerr oscillator.

    ``resonant_rotating``: ``kappa n(n-1) + eps (a^dag + a)``, time
    independent; only valid when the probe sits at ``omega_bar``.
    ``lab_effective``: ``omega_bar n + kappa n(n-1)`` plus the probe
    ``eps (a^dag e^{-i w2 t} + a e^{i w2 t})``; ``w2`` defaults to
    ``omega_bar``.
    """
    if int(dim) != dim or dim < 4:
        raise InvalidDimensionError(f"Kerr model needs dim >= 4 to resolve two phonons, got {dim!r}")
    a = fock.annihilation_op(dim)
    ad = fock.creation_op(dim)
    n = fock.number_op(dim)
    kerr = r.kappa * (n @ (n - np.eye(dim)))
    eps = r.signed_epsilon
    if frame == "resonant_rotating":
        if r.omega_2 is not None and not math.isclose(r.omega_2, r.omega_bar, rel_tol=1e-12, abs_tol=1e-12):
            raise FrameMismatchError(
                f"probe frequency {r.omega_2!r} differs from omega_bar {r.omega_bar!r}")
        return HamiltonianSpec(static=fock._frozen(kerr + eps * (a + ad)))
    if frame == "lab_effective":
        w2 = r.omega_bar if r.omega_2 is None else r.omega_2
        static = fock._frozen(r.omega_bar * n + kerr)
        terms = ((fock._frozen(eps * ad), w2), (fock._frozen(eps * a), -w2)) if eps != 0 else ()
        return HamiltonianSpec(static=static, drive_terms=terms)
    raise InvalidArgumentError(f"unknown frame {frame!r}")


def build_full_model(p: PhysicalParams, dim: int) -> HamiltonianSpec:
    """Qubit (x) resonator Hamiltonian in the frame rotating at ``omega_0``.

    Static part ``-delta n + g (sigma+ a + sigma- a^dag) + Omega sigma_x``,
    qubit as the slow index with basis ``{|g>, |e>}``. When a probe
    frequency is set and the probe is nonzero it is attached as drive terms.
    """
    if int(dim) != dim or dim < 4:
        raise InvalidDimensionError(f"full model needs dim >= 4, got {dim!r}")
    r = map_physical_params(p)
    flags = r.regime_flags
    if not (flags.rwa_ok and flags.dispersive_ok):
        warnings.warn(f"full model outside its validity regime: {flags}", RuntimeWarning, stacklevel=2)
    delta, g = r.delta, r.g
    a = fock.annihilation_op(dim)
    ad = fock.creation_op(dim)
    qid = np.eye(2)
    sp, sm = fock.sigma_plus(), fock.sigma_minus()
    static = (-delta * np.kron(qid, fock.number_op(dim))
              + g * (np.kron(sp, a) + np.kron(sm, ad))
              + p.Omega * np.kron(sp + sm, np.eye(dim)))
    terms = ()
    eps = r.signed_epsilon
    if p.omega_2 is not None and eps != 0:
        f = p.omega_2 - p.omega_0
        terms = ((fock._frozen(eps * np.kron(qid, ad)), f),
                 (fock._frozen(eps * np.kron(qid, a)), -f))
    return HamiltonianSpec(static=fock._frozen(static), drive_terms=terms)


def dressed_ladder(h_static, dim, levels=3):
    """Energies of the resonator ladder attached to the dressed qubit state ``|->``.

    Each level is the eigenstate with the largest overlap on
    ``|-> (x) |n>``, ``|-> = (|g> - |e>)/sqrt(2)``.
    """
    evals, evecs = np.linalg.eigh(h_static)
    minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    out = []
    for n in range(levels):
        ref = np.kron(minus, np.eye(dim)[n])
        overlap = np.abs(evecs.conj().T @ ref) ** 2
        out.append(evals[int(np.argmax(overlap))])
    return np.array(out)


def ladder_anharmonicity(p: PhysicalParams, dim: int = 12):
    """``(E2 - E1) - (E1 - E0)`` on the dressed-ground-state ladder of the full model."""
    e = dressed_ladder(build_full_model(p, dim).static, dim, levels=3)
    return float((e[2] - e[1]) - (e[1] - e[0]))


def physical_params_for(g, delta, Omega, omega=1.0, **extra):
    """Convenience constructor hitting a target ``g`` with unit device scales.

    Picks ``E_c = g/4`` with ``N_x = X_0 = d = 1`` and sets
    ``omega_0 = omega + delta``. No probe unless ``B``/``I_0`` are passed.
    """
    kw = dict(E_c=g / 4.0, N_x=1.0, X_0=1.0, d=1.0, B=0.0, I_0=0.0, L=1.0,
              omega=omega, omega_0=omega + delta, Omega=Omega)
    kw.update(extra)
    return PhysicalParams(**kw)
