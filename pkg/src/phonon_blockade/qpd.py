"""Cahill-Glauber s-parametrized quasiprobability distributions.

The production path uses the closed Fock-basis matrix elements of the
kernel ``T^(s)(alpha) = 2/(1-s) D(alpha) t^{a^dag a} D(alpha)^dag`` with
``t = (s+1)/(s-1)``. For ``m >= n``::

    <m|T|n> = 2/(1-s) exp(-2|alpha|^2/(1-s)) sqrt(n!/m!)
              (2 alpha/(1-s))^(m-n) t^n L_n^(m-n)(4|alpha|^2/(1-s^2))

and ``W^(s)(alpha) = Tr[rho T] / pi``. At ``s = -1`` only ``n = 0``
survives and the Husimi function is evaluated directly.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from . import fock
from .errors import InvalidArgumentError, UnsupportedDistributionError

log = logging.getLogger(__name__)

NEGATIVITY_TOL = 1e-6
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular grid of ``alpha = x + i y``."""

    x_min: float = -4.0
    x_max: float = 4.0
    y_min: float = -4.0
    y_max: float = 4.0
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        if self.nx < 16 or self.ny < 16:
            raise InvalidArgumentError("grid needs at least 16 points per axis")
        bounds = (self.x_min, self.x_max, self.y_min, self.y_max)
        if not all(math.isfinite(b) for b in bounds):
            raise InvalidArgumentError("grid bounds must be finite")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidArgumentError("grid bounds must be increasing")

    @property
    def xs(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self):
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def cell_area(self):
        return (self.x_max - self.x_min) / (self.nx - 1) * (self.y_max - self.y_min) / (self.ny - 1)

    def alphas(self):
        """Complex grid with shape ``(nx, ny)``; ``[i, j]`` is ``xs[i] + 1j*ys[j]``."""
        x, y = np.meshgrid(self.xs, self.ys, indexing="ij")
        return x + 1j * y


@dataclass(frozen=True)
class QpdMap:
    grid: PhaseSpaceGrid
    s: float
    values: np.ndarray
    min_value: float
    argmin: complex
    negative_volume: float

    @property
    def normalization(self):
        return float(self.values.sum() * self.grid.cell_area)


@dataclass(frozen=True)
class NegativityWitness:
    is_negative: bool
    min_value: float
    argmin: complex
    negative_volume: float


def _check_s(s):
    if s == 1:
        raise UnsupportedDistributionError("the P function (s = 1) is too singular to sample")
    if not -1 <= s < 1:
        raise InvalidArgumentError(f"s must lie in [-1, 1), got {s!r}")


def _check_state(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    fock.check_density_matrix(rho)
    if fock.tail_mass(rho) >= 1e-8:
        log.warning("state has tail mass %.3g near the Fock cutoff; QPD may be truncated",
                    fock.tail_mass(rho))
    return rho


def _husimi(rho, alpha):
    dim = rho.shape[0]
    n = np.arange(dim)
    logfact = 0.5 * gammaln(n + 1)
    # <n|alpha> without the exp(-|alpha|^2/2) prefactor
    amps = np.stack([alpha ** k / np.exp(logfact[k]) for k in n], axis=-1)
    val = np.einsum("...m,mn,...n->...", amps.conj(), rho, amps)
    return val * np.exp(-np.abs(alpha) ** 2) / np.pi


def qpd_values(rho, alpha, s):
    """Vectorized QPD at an array of phase-space points; returns a real array."""
    _check_s(s)
    rho = _check_state(rho)
    alpha = np.asarray(alpha, dtype=complex)
    if s == -1:
        total = _husimi(rho, alpha)
    else:
        dim = rho.shape[0]
        r2 = np.abs(alpha) ** 2
        x = 4.0 * r2 / (1.0 - s * s)
        t = (s + 1.0) / (s - 1.0)
        z = 2.0 * alpha / (1.0 - s)
        acc = np.zeros(alpha.shape, dtype=complex)
        zpow = [np.ones_like(alpha)]
        for _ in range(1, dim):
            zpow.append(zpow[-1] * z)
        lf = gammaln(np.arange(dim) + 1)
        for m in range(dim):
            for n in range(m + 1):
                k = m - n
                if rho[n, m] == 0 and rho[m, n] == 0:
                    continue
                elem = (math.exp(0.5 * (lf[n] - lf[m])) * t ** n) * zpow[k] * eval_genlaguerre(n, k, x)
                # Tr[rho T] picks rho[n, m] <m|T|n> and its mirror rho[m, n] <n|T|m>
                acc += rho[n, m] * elem
                if k:
                    acc += rho[m, n] * np.conj(elem)
        total = acc * (2.0 / (1.0 - s)) * np.exp(-2.0 * r2 / (1.0 - s)) / np.pi
    resid = np.max(np.abs(np.imag(total)), initial=0.0)
    scale = max(1.0, float(np.max(np.abs(total), initial=0.0)))
    if resid > IMAG_TOL * scale:
        raise InvalidArgumentError(f"QPD imaginary residue {resid:.3g} exceeds tolerance")
    return np.real(total)


def qpd_point(rho, alpha, s):
    return float(qpd_values(rho, np.array([alpha]), s)[0])


def wigner_displaced_parity(rho, alpha, pad=40):
    """Wigner function from ``(2/pi) Tr[rho D(alpha) Pi D(alpha)^dag]``.

    ``rho`` is embedded into a space enlarged by ``pad`` levels before
    displacing, so the truncated matrix exponential stays accurate.
    Independent of the Laguerre path; slow, meant for cross-checks.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    big = dim + int(pad)
    embedded = np.zeros((big, big), dtype=complex)
    embedded[:dim, :dim] = rho
    parity = fock.parity_op(big)
    d = fock.displacement_op(alpha, big)
    return float(np.real(2.0 / np.pi * np.trace(embedded @ d @ parity @ fock.dagger(d))))


def qpd_grid(rho, grid: PhaseSpaceGrid, s) -> QpdMap:
    values = qpd_values(rho, grid.alphas(), s)
    values.setflags(write=False)
    i, j = np.unravel_index(int(np.argmin(values)), values.shape)
    neg = values[values < 0]
    return QpdMap(
        grid=grid,
        s=float(s),
        values=values,
        min_value=float(values[i, j]),
        argmin=complex(grid.xs[i], grid.ys[j]),
        negative_volume=float(-neg.sum() * grid.cell_area),
    )


def negativity_witness(qmap: QpdMap, tol=NEGATIVITY_TOL) -> NegativityWitness:
    """Negativity at any ``s > -1`` certifies nonclassicality; absence proves nothing."""
    return NegativityWitness(
        is_negative=bool(qmap.min_value < -tol),
        min_value=qmap.min_value,
        argmin=qmap.argmin,
        negative_volume=qmap.negative_volume,
    )


def write_qpd(qmap: QpdMap, csv_path, json_path=None):
    """CSV with columns ``x,y,value`` plus a JSON sidecar describing the map."""
    from .io import write_csv, write_json

    xs, ys = qmap.grid.xs, qmap.grid.ys
    rows = ((xs[i], ys[j], qmap.values[i, j]) for i in range(len(xs)) for j in range(len(ys)))
    write_csv(csv_path, ("x", "y", "value"), rows)
    if json_path is None:
        json_path = str(csv_path).rsplit(".", 1)[0] + ".json"
    write_json(json_path, {
        "s": qmap.s,
        "grid": asdict(qmap.grid),
        "min_value": qmap.min_value,
        "argmin": [qmap.argmin.real, qmap.argmin.imag],
        "negative_volume": qmap.negative_volume,
        "normalization": qmap.normalization,
    })
    return json_path


def read_qpd_sidecar(json_path):
    with open(json_path, encoding="utf-8") as fh:
        return json.load(fh)
