"""Quantum-jump (Monte Carlo wave-function) unraveling of the thermal master equation.

Each trajectory evolves an unnormalized ket under the non-Hermitian
Hamiltonian ``H - (i/2) sum_k C_k^dag C_k`` until its squared norm falls
to a uniform random threshold. The jump time is then refined by
bisection, a channel is drawn with weight ``||C_k psi||^2`` and the ket is
renormalized. Randomness comes from a counter-based Philox generator keyed
by the trajectory seed, so results do not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.integrate import solve_ivp

from . import fock
from .errors import AggregationError, InvalidArgumentError, NumericalDegeneracyError, StiffnessError
from .model import HamiltonianSpec

NORM2_TOL = 1e-8
_COND_LIMIT = 1e8


@dataclass(frozen=True)
class Trajectory:
    seed: int
    times: np.ndarray
    states: np.ndarray
    jumps: tuple  # (time, channel) with channel numbered from 1

    @property
    def populations(self):
        return np.abs(self.states) ** 2


@dataclass(frozen=True)
class EnsembleEstimate:
    times: np.ndarray
    P_mean: np.ndarray
    P_stderr: np.ndarray | None  # None when a single trajectory makes it meaningless
    n_traj: int


def trajectory_seed(master_seed, index):
    """64-bit seed for trajectory ``index`` derived from ``master_seed``."""
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rng(seed):
    return np.random.Generator(np.random.Philox(key=int(seed)))


class _StaticDrift:
    """Exact no-jump propagator for a time-independent effective Hamiltonian."""

    def __init__(self, h_eff):
        lam, v = np.linalg.eig(h_eff)
        self.exact = np.linalg.cond(v) < _COND_LIMIT
        if self.exact:
            self.lam = lam
            self.v = v
            self.vinv = np.linalg.inv(v)
        else:
            self.h_eff = h_eff

    def __call__(self, psi, t0, tau):
        if self.exact:
            return self.v @ (np.exp(-1j * self.lam * tau) * (self.vinv @ psi))
        return scipy.linalg.expm(-1j * self.h_eff * tau) @ psi


class _DrivenDrift:
    """No-jump propagation with time-dependent drive terms, by adaptive RK."""

    def __init__(self, h: HamiltonianSpec, h_eff):
        self.h_eff = h_eff
        self.terms = h.drive_terms

    def _rhs(self, t, psi):
        out = self.h_eff @ psi
        for op, f in self.terms:
            out += np.exp(-1j * f * t) * (op @ psi)
        return -1j * out

    def __call__(self, psi, t0, tau):
        if tau == 0:
            return psi.copy()
        sol = solve_ivp(self._rhs, (t0, t0 + tau), psi, method="RK45", rtol=1e-10, atol=1e-12)
        if sol.status != 0:
            raise StiffnessError(f"trajectory integration failed: {sol.message}", float(sol.t[-1]))
        return sol.y[:, -1]


def _norm2(psi):
    return float(np.vdot(psi, psi).real)


def _find_jump(drift, psi, t0, tau, target):
    """Bisect for the sub-step where ``||psi||^2`` first reaches ``target``."""
    lo, hi = 0.0, tau
    psi_hi = drift(psi, t0, hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        psi_mid = drift(psi, t0, mid)
        n_mid = _norm2(psi_mid)
        if n_mid > target:
            lo = mid
        else:
            hi, psi_hi = mid, psi_mid
        if abs(n_mid - target) < NORM2_TOL or hi - lo < 1e-14 * max(1.0, tau):
            break
    return hi, psi_hi


def run_trajectory(psi0, h, collapse, times, seed) -> Trajectory:
    """Single quantum-jump trajectory sampled on ``times``.

    ``h`` is a matrix or a :class:`HamiltonianSpec`; ``collapse`` lists the
    jump operators in channel order.
    """
    psi0 = fock.check_ket(np.asarray(psi0, dtype=complex))
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
        raise InvalidArgumentError("times must be strictly increasing")
    spec = h if isinstance(h, HamiltonianSpec) else HamiltonianSpec(static=np.asarray(h))
    dim = psi0.shape[0]
    collapse = [np.asarray(c, dtype=complex) for c in collapse]
    for c in collapse:
        if c.shape != (dim, dim):
            raise InvalidArgumentError(f"collapse operator shape {c.shape} incompatible with dim {dim}")

    h_eff = np.array(spec.static, dtype=complex)
    for c in collapse:
        h_eff -= 0.5j * (c.conj().T @ c)
    drift = _DrivenDrift(spec, h_eff) if spec.is_time_dependent else _StaticDrift(h_eff)
    active = [c for c in collapse if np.any(c)]
    active_idx = [k for k, c in enumerate(collapse) if np.any(c)]

    rng = _rng(seed)
    threshold = rng.random()
    psi = psi0.copy()
    t = float(times[0])
    states = np.empty((times.size, dim), dtype=complex)
    states[0] = psi0
    jumps = []
    for k in range(1, times.size):
        t_end = float(times[k])
        while True:
            tau = t_end - t
            trial = drift(psi, t, tau)
            if not active or _norm2(trial) > threshold:
                psi, t = trial, t_end
                break
            dt_jump, psi = _find_jump(drift, psi, t, tau, threshold)
            t = t + dt_jump
            weights = np.array([_norm2(c @ psi) for c in active])
            total = weights.sum()
            if not total > 0:
                raise NumericalDegeneracyError(f"all collapse channels vanish at t = {t!r}")
            j = int(np.searchsorted(np.cumsum(weights) / total, rng.random(), side="right"))
            j = min(j, len(active) - 1)
            psi = active[j] @ psi
            psi = psi / np.sqrt(_norm2(psi))
            jumps.append((t, active_idx[j] + 1))
            threshold = rng.random()
            if t >= t_end:
                break
        states[k] = psi / np.sqrt(_norm2(psi))
    states.setflags(write=False)
    return Trajectory(seed=int(seed), times=times, states=states, jumps=tuple(jumps))


def run_ensemble(psi0, h, collapse, times, n_traj, master_seed=0, threads=1):
    """``n_traj`` trajectories with seeds derived from ``master_seed``.

    Output is identical for any ``threads``; order follows the trajectory index.
    """
    if n_traj < 1:
        raise InvalidArgumentError("n_traj must be >= 1")
    seeds = [trajectory_seed(master_seed, i) for i in range(n_traj)]

    def one(seed):
        return run_trajectory(psi0, h, collapse, times, seed)

    if threads is None or threads <= 1:
        return [one(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, seeds))


def _sorted_stack(trajectories, getter):
    trajectories = sorted(trajectories, key=lambda tr: tr.seed)
    if not trajectories:
        raise AggregationError("no trajectories to aggregate")
    times = trajectories[0].times
    for tr in trajectories[1:]:
        if not np.array_equal(tr.times, times):
            raise AggregationError("trajectories were sampled on different time grids")
    return times, np.stack([getter(tr) for tr in trajectories])


def ensemble_average(trajectories) -> EnsembleEstimate:
    """Mean populations and their standard errors across trajectories."""
    times, pops = _sorted_stack(trajectories, lambda tr: tr.populations)
    n = pops.shape[0]
    mean = pops.mean(axis=0)
    stderr = pops.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else None
    return EnsembleEstimate(times=times, P_mean=mean, P_stderr=stderr, n_traj=n)


def ensemble_density_matrices(trajectories):
    """Average of ``|psi><psi|`` at every sampled time."""
    times, states = _sorted_stack(trajectories, lambda tr: tr.states)
    return times, np.einsum("kti,ktj->tij", states, states.conj()) / states.shape[0]
