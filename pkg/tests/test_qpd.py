import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.signal import fftconvolve
from scipy.special import eval_laguerre

from phonon_blockade import fock, lindblad, model, qpd
from phonon_blockade.errors import InvalidArgumentError, UnsupportedDistributionError


def random_dm(dim, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def quadrature_qpd(rho, alpha, s, radius=8.0, n=81, big=200):
    """(1/pi^2) int d^2xi Tr[rho D(xi)] exp(s|xi|^2/2) exp(alpha xi* - alpha* xi).

    D(r e^{i theta}) = R(theta) exp(r (a^dag - a)) R(theta)^dag with R = exp(i theta n);
    the generator is diagonalized once in a large space.
    """
    dim = rho.shape[0]
    a = fock.annihilation_op(big)
    lam, u = np.linalg.eigh(1j * (fock.dagger(a) - a))  # a^dag - a = -i U lam U^dag
    rows = u[:dim, :]
    levels = np.arange(dim)
    xs = np.linspace(-radius, radius, n)
    h = xs[1] - xs[0]
    total = 0.0
    for x in xs:
        for y in xs:
            xi = complex(x, y)
            r, th = abs(xi), np.angle(xi)
            if r > radius:
                continue
            low = (rows * np.exp(-1j * r * lam)) @ rows.conj().T
            ph = np.exp(1j * th * levels)
            d = ph[:, None] * low * ph.conj()[None, :]
            chi = np.sum(rho * d.T)
            total += chi * np.exp(s * r * r / 2 + alpha * np.conj(xi) - np.conj(alpha) * xi)
    return (total * h * h / np.pi ** 2).real


def test_vacuum_and_one_phonon_wigner_origin():
    assert qpd.qpd_point(fock.fock_dm(0, 6), 0, 0.0) == pytest.approx(2 / math.pi, abs=1e-12)
    assert qpd.qpd_point(fock.fock_dm(1, 6), 0, 0.0) == pytest.approx(-2 / math.pi, abs=1e-12)
    assert qpd.wigner_displaced_parity(fock.fock_dm(0, 6), 0) == pytest.approx(2 / math.pi, abs=1e-12)
    assert qpd.wigner_displaced_parity(fock.fock_dm(1, 6), 0) == pytest.approx(-2 / math.pi, abs=1e-12)


def test_vacuum_half_ordered_by_quadrature():
    val = qpd.qpd_point(fock.fock_dm(0, 6), 0, 0.5)
    assert val == pytest.approx(4 / math.pi, abs=1e-12)
    assert quadrature_qpd(fock.fock_dm(0, 2), 0, 0.5) == pytest.approx(4 / math.pi, abs=1e-6)


def test_random_state_by_quadrature():
    rho = random_dm(4, 5)
    alpha, s = 0.4 - 0.3j, 0.3
    assert qpd.qpd_point(rho, alpha, s) == pytest.approx(quadrature_qpd(rho, alpha, s), abs=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 1000), st.floats(-2, 2), st.floats(-2, 2))
def test_laguerre_matches_displaced_parity(seed, x, y):
    rho = random_dm(6, seed)
    alpha = complex(x, y)
    assert qpd.qpd_point(rho, alpha, 0.0) == pytest.approx(
        qpd.wigner_displaced_parity(rho, alpha), abs=1e-8)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_fock_wigner_closed_form(n):
    alphas = np.linspace(-2, 2, 9) + 0.3j
    r2 = np.abs(alphas) ** 2
    ref = 2 / np.pi * (-1) ** n * eval_laguerre(n, 4 * r2) * np.exp(-2 * r2)
    np.testing.assert_allclose(qpd.qpd_values(fock.fock_dm(n, 8), alphas, 0.0), ref, atol=1e-12)


def test_coherent_husimi_closed_form():
    beta = 0.8 - 0.5j
    rho = fock.ket_to_dm(fock.coherent_ket(beta, 30))
    alphas = np.array([0, beta, 1 + 1j, -0.5])
    ref = np.exp(-np.abs(alphas - beta) ** 2) / np.pi
    np.testing.assert_allclose(qpd.qpd_values(rho, alphas, -1.0), ref, atol=1e-10)


@pytest.mark.parametrize("n", [0, 1])
def test_husimi_is_smoothed_wigner(n):
    grid = qpd.PhaseSpaceGrid(-6, 6, -6, 6, 241, 241)
    rho = fock.fock_dm(n, 4)
    w = qpd.qpd_grid(rho, grid, 0.0).values
    x = grid.xs
    kern = 2 / np.pi * np.exp(-2 * (x[:, None] ** 2 + x[None, :] ** 2))
    smooth = fftconvolve(w, kern, mode="same") * grid.cell_area
    q = qpd.qpd_grid(rho, grid, -1.0).values
    core = slice(60, 181)
    np.testing.assert_allclose(smooth[core, core], q[core, core], atol=1e-4)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 1000), st.floats(-0.99, 0.9))
def test_values_real(seed, s):
    rho = random_dm(7, seed)
    grid = qpd.PhaseSpaceGrid(-3, 3, -3, 3, 16, 16)
    vals = qpd.qpd_values(rho, grid.alphas(), s)
    assert vals.dtype.kind == "f"


def test_unsupported_orders():
    rho = fock.fock_dm(0, 4)
    with pytest.raises(UnsupportedDistributionError):
        qpd.qpd_point(rho, 0, 1.0)
    for s in (1.5, -1.2):
        with pytest.raises(InvalidArgumentError):
            qpd.qpd_point(rho, 0, s)


def test_grid_validation():
    with pytest.raises(InvalidArgumentError):
        qpd.PhaseSpaceGrid(nx=8)
    with pytest.raises(InvalidArgumentError):
        qpd.PhaseSpaceGrid(x_min=1, x_max=-1)
    g = qpd.PhaseSpaceGrid()
    assert g.alphas().shape == (201, 201)
    assert g.alphas()[3, 5] == complex(g.xs[3], g.ys[5])


def test_witness_examples():
    grid = qpd.PhaseSpaceGrid(nx=81, ny=81)
    one = qpd.negativity_witness(qpd.qpd_grid(fock.fock_dm(1, 6), grid, 0.0))
    assert one.is_negative
    assert abs(one.argmin) < 0.11
    husimi = qpd.negativity_witness(qpd.qpd_grid(fock.fock_dm(1, 6), grid, -1.0))
    assert not husimi.is_negative


@pytest.fixture(scope="module")
def blockade_state():
    rho, _ = lindblad.kerr_steady_state(model.ReducedParams.kerr(3.0, 30.0, 1.0, 0.01))
    return rho


def test_blockade_state_dichotomy(blockade_state):
    grid = qpd.PhaseSpaceGrid()
    w0 = qpd.qpd_grid(blockade_state, grid, 0.0)
    wh = qpd.qpd_grid(blockade_state, grid, 0.5)
    assert w0.min_value >= -1e-6
    assert not qpd.negativity_witness(w0).is_negative
    wit = qpd.negativity_witness(wh)
    assert wit.is_negative and abs(wit.argmin) < 0.5
    for m in (w0, wh, qpd.qpd_grid(blockade_state, grid, -1.0)):
        assert 0.97 <= m.normalization <= 1.03


def test_write_qpd(tmp_path, blockade_state):
    grid = qpd.PhaseSpaceGrid(-2, 2, -2, 2, 21, 21)
    m = qpd.qpd_grid(blockade_state, grid, 0.5)
    side = qpd.write_qpd(m, tmp_path / "a.csv")
    qpd.write_qpd(m, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    meta = qpd.read_qpd_sidecar(side)
    assert meta["s"] == 0.5 and meta["grid"]["nx"] == 21
    lines = (tmp_path / "a.csv").read_text().splitlines()
    assert lines[0] == "x,y,value" and len(lines) == 1 + 21 * 21
    x, y, v = map(float, lines[1 + 3 * 21 + 4].split(","))
    assert (x, y) == (grid.xs[3], grid.ys[4]) and v == m.values[3, 4]
    json.loads(open(side).read())


def test_tail_warning(caplog):
    with caplog.at_level("WARNING"):
        qpd.qpd_point(fock.fock_dm(4, 5), 0, 0.0)
    assert "tail mass" in caplog.text
