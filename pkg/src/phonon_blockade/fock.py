"""Dense linear algebra on a truncated Fock space.

Operators, kets and density matrices are plain complex ``numpy`` arrays.
Constructors hand back read-only arrays so they can be shared between
threads; copy before mutating.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import scipy.linalg

from .errors import InvalidArgumentError, InvalidDimensionError, ShapeMismatchError

log = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-8
POSITIVITY_TOL = 1e-8
NORM_TOL = 1e-8


def _frozen(m):
    m = np.ascontiguousarray(m, dtype=complex)
    m.setflags(write=False)
    return m


def _check_dim(dim, minimum=2):
    if int(dim) != dim or dim < minimum:
        raise InvalidDimensionError(f"dimension must be an integer >= {minimum}, got {dim!r}")
    return int(dim)


def dagger(op):
    return np.conj(np.transpose(op))


def identity_op(dim):
    return _frozen(np.eye(_check_dim(dim)))


def annihilation_op(dim):
    """Truncated annihilation operator with ``<n-1|a|n> = sqrt(n)``."""
    dim = _check_dim(dim)
    return _frozen(np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1))


def creation_op(dim):
    return _frozen(dagger(annihilation_op(dim)))


def number_op(dim):
    dim = _check_dim(dim)
    return _frozen(np.diag(np.arange(dim, dtype=float)))


def parity_op(dim):
    dim = _check_dim(dim)
    return _frozen(np.diag((-1.0) ** np.arange(dim)))


# Qubit operators in the {|g>, |e>} basis, |g> first.
def sigma_plus():
    return _frozen([[0, 0], [1, 0]])


def sigma_minus():
    return _frozen([[0, 1], [0, 0]])


def sigma_z():
    return _frozen([[-1, 0], [0, 1]])


def displacement_op(xi, dim):
    """Matrix exponential of ``xi a^dag - xi^* a`` on the truncated space.

    Note that this is the exponential of the *truncated* generator, so
    matrix elements near the cutoff differ from the infinite-dimensional
    operator. Use ``dim`` well above the support of the states involved.
    """
    xi = complex(xi)
    if not (math.isfinite(xi.real) and math.isfinite(xi.imag)):
        raise InvalidArgumentError(f"displacement must be finite, got {xi!r}")
    a = annihilation_op(dim)
    gen = xi * dagger(a) - np.conj(xi) * a
    return _frozen(scipy.linalg.expm(gen))


def tensor(left, right):
    """Kronecker product; the left factor is the slow index."""
    left = np.asarray(left)
    right = np.asarray(right)
    for m in (left, right):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatchError(f"expected square operator, got shape {m.shape}")
    return _frozen(np.kron(left, right))


def fock_ket(n, dim):
    dim = _check_dim(dim)
    if not 0 <= n < dim:
        raise InvalidArgumentError(f"Fock index {n} outside truncation dim {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[n] = 1.0
    return _frozen(psi)


def coherent_ket(alpha, dim):
    """Coherent state from its Poisson amplitudes, renormalized after truncation."""
    dim = _check_dim(dim)
    n = np.arange(dim)
    logamp = -0.5 * abs(alpha) ** 2 - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    psi = np.exp(logamp) * np.power(complex(alpha), n)
    return _frozen(psi / np.linalg.norm(psi))


def ket_to_dm(psi):
    psi = np.asarray(psi)
    return _frozen(np.outer(psi, np.conj(psi)))


def fock_dm(n, dim):
    return ket_to_dm(fock_ket(n, dim))


def thermal_dm(nbar, dim):
    """Thermal state with mean occupation ``nbar``, renormalized on the truncated space."""
    dim = _check_dim(dim)
    if nbar < 0 or not math.isfinite(nbar):
        raise InvalidArgumentError(f"nbar must be finite and >= 0, got {nbar!r}")
    if nbar == 0:
        p = np.zeros(dim)
        p[0] = 1.0
    else:
        q = nbar / (1.0 + nbar)
        p = (1.0 - q) * q ** np.arange(dim)
        p /= p.sum()
    return _frozen(np.diag(p))


def is_hermitian(op, tol=HERMITIAN_TOL):
    op = np.asarray(op)
    return bool(np.max(np.abs(op - dagger(op)), initial=0.0) <= tol)


def check_ket(psi, tol=NORM_TOL):
    psi = np.asarray(psi)
    if psi.ndim != 1:
        raise ShapeMismatchError(f"ket must be one-dimensional, got shape {psi.shape}")
    _check_dim(psi.shape[0])
    if not np.all(np.isfinite(psi)):
        raise InvalidArgumentError("ket has non-finite amplitudes")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise InvalidArgumentError(f"ket norm {norm!r} deviates from 1 by more than {tol}")
    return psi


def check_density_matrix(rho, hermitian_tol=HERMITIAN_TOL, trace_tol=TRACE_TOL,
                         positivity_tol=POSITIVITY_TOL):
    """Validate the density-matrix invariants and return ``rho`` unchanged."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeMismatchError(f"density matrix must be square, got shape {rho.shape}")
    _check_dim(rho.shape[0])
    if not np.all(np.isfinite(rho)):
        raise InvalidArgumentError("density matrix has non-finite entries")
    herm = np.max(np.abs(rho - dagger(rho)))
    if herm > hermitian_tol:
        raise InvalidArgumentError(f"density matrix not Hermitian (max |rho - rho^dag| = {herm:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise InvalidArgumentError(f"density matrix trace {tr!r} deviates from 1")
    lam = np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))[0]
    if lam < -positivity_tol:
        raise InvalidArgumentError(f"density matrix has negative eigenvalue {lam:.3g}")
    return rho


def tail_mass(rho):
    """Population of the two highest Fock levels, the truncation diagnostic."""
    rho = np.asarray(rho)
    if rho.ndim == 1:
        p = np.abs(rho) ** 2
    else:
        p = np.real(np.diag(rho))
    return float(p[-1] + p[-2])


def expectation(state, op):
    """``Tr[rho op]`` for a density matrix or ``<psi|op|psi>`` for a ket.

    For Hermitian ``op`` the real part is returned as a float; an imaginary
    residue above 1e-10 is logged as a warning. Otherwise the complex value
    is returned.
    """
    state = np.asarray(state)
    op = np.asarray(op)
    n = state.shape[0]
    if op.shape != (n, n):
        raise ShapeMismatchError(f"operator shape {op.shape} does not match state dim {n}")
    if state.ndim == 1:
        val = np.vdot(state, op @ state)
    elif state.ndim == 2 and state.shape == (n, n):
        # Tr[rho op] without forming the product
        val = np.sum(state * op.T)
    else:
        raise ShapeMismatchError(f"state must be a ket or a square matrix, got {state.shape}")
    val = complex(val)
    if is_hermitian(op, 1e-12):
        if abs(val.imag) > 1e-10:
            log.warning("expectation of Hermitian operator has imaginary residue %.3g", val.imag)
        return val.real
    return val
