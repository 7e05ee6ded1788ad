"""Thermal master equation for the driven Kerr oscillator.

Density matrices are vectorized by column stacking, ``vec(A rho B) =
(B^T kron A) vec(rho)``, matching ``rho.reshape(-1, order="F")``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import fock
from .errors import (
    DegeneracyError,
    InvalidArgumentError,
    InvalidDimensionError,
    NoUniqueSteadyStateError,
    ShapeMismatchError,
    StiffnessError,
)
from .model import HamiltonianSpec, ReducedParams, build_kerr_hamiltonian

RTOL = 1e-9
ATOL = 1e-12
TAIL_TOL = 1e-8


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(x, dim):
    return np.asarray(x).reshape(dim, dim, order="F")


def commutator_superop(h):
    """Superoperator of ``-i [h, .]``."""
    h = np.asarray(h)
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def dissipator_superop(c):
    """Superoperator of ``c rho c^dag - {c^dag c, rho} / 2``."""
    c = np.asarray(c)
    eye = np.eye(c.shape[0])
    cdc = c.conj().T @ c
    return np.kron(c.conj(), c) - 0.5 * np.kron(eye, cdc) - 0.5 * np.kron(cdc.T, eye)


def thermal_collapse_ops(dim, gamma, nbar):
    """Loss ``sqrt(gamma (nbar+1)) a`` (channel 1) and gain ``sqrt(gamma nbar) a^dag`` (channel 2)."""
    if gamma < 0 or nbar < 0:
        raise InvalidArgumentError(f"gamma and nbar must be non-negative, got {gamma!r}, {nbar!r}")
    a = fock.annihilation_op(dim)
    return (fock._frozen(math.sqrt(gamma * (nbar + 1.0)) * a),
            fock._frozen(math.sqrt(gamma * nbar) * fock.dagger(a)))


@dataclass(frozen=True)
class Liouvillian:
    dim: int
    matrix: np.ndarray
    collapse_ops: tuple
    hamiltonian: np.ndarray
    gamma: float
    nbar: float

    def apply(self, rho):
        return unvec(self.matrix @ vec(rho), self.dim)


def build_liouvillian(h, gamma, nbar):
    """Liouvillian of the thermal master equation for Hamiltonian ``h``.

    ``h`` may be a matrix or a :class:`HamiltonianSpec`, in which case only
    its static part is used; pass the drive terms to :func:`evolve`.
    """
    if isinstance(h, HamiltonianSpec):
        h = h.static
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeMismatchError(f"Hamiltonian must be square, got {h.shape}")
    if not (gamma >= 0 and nbar >= 0):
        raise InvalidArgumentError(f"gamma and nbar must be non-negative, got {gamma!r}, {nbar!r}")
    dim = h.shape[0]
    cops = thermal_collapse_ops(dim, gamma, nbar)
    mat = commutator_superop(h)
    for c in cops:
        if gamma > 0:
            mat = mat + dissipator_superop(c)
    mat.setflags(write=False)
    return Liouvillian(dim=dim, matrix=mat, collapse_ops=cops,
                       hamiltonian=fock._frozen(h), gamma=float(gamma), nbar=float(nbar))


@dataclass(frozen=True)
class BlockadeObservables:
    """Populations, blockade fidelity ``F = P0 + P1`` and the 0-1 coherence."""

    times: np.ndarray
    P: np.ndarray
    F: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    states: np.ndarray | None = None


def blockade_observables(times, states):
    states = np.asarray(states)
    P = np.real(np.diagonal(states, axis1=1, axis2=2)).copy()
    F = P[:, 0] + P[:, 1]
    coh = states[:, 0, 1]
    return BlockadeObservables(times=np.asarray(times, dtype=float), P=P, F=F,
                               X=coh.real.copy(), Y=coh.imag.copy(), states=states)


def evolve(rho0, L: Liouvillian, times, drive_terms=(), check=True):
    """Integrate the master equation and sample ``rho(t)`` on ``times``.

    Uses the adaptive Dormand-Prince 5(4) pair with dense output, so the
    sample grid does not constrain the internal steps. ``drive_terms``
    follows the :class:`HamiltonianSpec` convention.
    """
    rho0 = fock.check_density_matrix(rho0)
    if rho0.shape[0] != L.dim:
        raise ShapeMismatchError(f"state dim {rho0.shape[0]} != Liouvillian dim {L.dim}")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or times[0] != 0 or np.any(np.diff(times) <= 0):
        raise InvalidArgumentError("times must be strictly increasing and start at 0")

    x0 = vec(rho0).astype(complex)
    if times.size == 1:
        states = np.array([rho0], dtype=complex)
        return blockade_observables(times, states)

    drives = [(commutator_superop(op), complex(f)) for op, f in drive_terms]
    mat = L.matrix
    if drives:
        def rhs(t, x):
            out = mat @ x
            for s, f in drives:
                out += np.exp(-1j * f * t) * (s @ x)
            return out
    else:
        def rhs(t, x):
            return mat @ x

    sol = solve_ivp(rhs, (times[0], times[-1]), x0, method="RK45", t_eval=times,
                    rtol=RTOL, atol=ATOL)
    if sol.status != 0:
        t_fail = float(sol.t[-1]) if sol.t.size else float(times[0])
        raise StiffnessError(f"integration failed: {sol.message}", t_fail)
    states = np.stack([unvec(sol.y[:, k], L.dim) for k in range(times.size)])
    if check:
        for rho in states:
            fock.check_density_matrix(rho)
    return blockade_observables(times, states)


def steady_state(L: Liouvillian):
    """Unique fixed point of ``L`` by a dense solve with one row replaced by the trace."""
    if L.gamma <= 0:
        raise NoUniqueSteadyStateError("steady state is not unique without dissipation")
    dim = L.dim
    a = np.array(L.matrix, dtype=complex)
    b = np.zeros(dim * dim, dtype=complex)
    # Row 0 is the (0, 0) population equation; trace conservation makes it redundant.
    a[0, :] = vec(np.eye(dim))
    b[0] = 1.0
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise DegeneracyError("Liouvillian has a degenerate kernel") from exc
    resid = np.linalg.norm(L.matrix @ x)
    scale = np.abs(L.matrix).sum(axis=1).max()
    if not np.isfinite(resid) or resid > 1e-10 * scale:
        raise DegeneracyError(f"steady-state residual {resid:.3g} too large; kernel is degenerate")
    rho = unvec(x, dim)
    rho = 0.5 * (rho + rho.conj().T)
    return fock._frozen(rho / np.trace(rho).real)


def slowest_rate(L: Liouvillian):
    """Smallest nonzero relaxation rate ``-Re(lambda)`` of the Liouvillian spectrum."""
    lam = np.linalg.eigvals(L.matrix)
    rates = np.sort(-lam.real)
    rates = rates[rates > 1e-9 * max(1.0, rates[-1])]
    return float(rates[0])


def truncation_dim(epsilon, gamma, nbar, spectrum=False):
    """Fock cutoff ``max(10, ceil(4 (eps/gamma + 3 nbar)))``, at least 12 for spectra.

    Without damping the drive ratio is unbounded, so the floor is used and
    the caller is expected to confirm with :func:`fock.tail_mass`.
    """
    drive = epsilon / gamma if gamma > 0 else 0.0
    dim = max(10, math.ceil(4.0 * (drive + 3.0 * nbar)))
    if spectrum:
        dim = max(dim, 12)
    return dim


def tail_ok(rho, tol=TAIL_TOL):
    return fock.tail_mass(rho) < tol


def kerr_steady_state(r: ReducedParams, dim=None, spectrum=False, max_dim=64):
    """Steady state of the rotating-frame Kerr model with a validated cutoff.

    Starts from :func:`truncation_dim` (or ``dim``) and grows the cutoff in
    steps of 5 until the tail population drops below 1e-8.
    Returns ``(rho, L)``.
    """
    if dim is None:
        dim = truncation_dim(r.epsilon, r.gamma, r.nbar, spectrum=spectrum)
        if dim > max_dim:
            raise InvalidDimensionError(
                f"cutoff policy asks for dim {dim} > max_dim {max_dim}; pass dim or raise max_dim")
    while True:
        L = build_liouvillian(build_kerr_hamiltonian(r, dim), r.gamma, r.nbar)
        rho = steady_state(L)
        if tail_ok(rho) or dim + 5 > max_dim:
            return rho, L
        dim += 5
