import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcap import (
    ValidationError,
    normal_radii,
    quad_propagator,
    random_symplectic,
    symplectic_spectrum,
    williamson_decompose,
)
from symcap.symcore import QuadraticHamiltonian


def random_posdef(n2, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n2, n2))
    return A @ A.T + 0.1 * np.eye(n2)


def test_spectrum_identity():
    assert np.allclose(symplectic_spectrum(np.eye(4)).mu, [1.0, 1.0])


def test_spectrum_diag_ab():
    # eigenvalues of J diag(a, b) are +/- i sqrt(ab)
    for a, b in ((4.0, 1.0), (2.0, 3.0), (0.5, 0.1)):
        mu = symplectic_spectrum(np.diag([a, b])).mu
        assert mu[0] == pytest.approx(math.sqrt(a * b), rel=1e-12)


def test_spectrum_oscillator_frequency():
    m, omega = 2.0, 1.3
    R = np.diag([m * omega**2, 1.0 / m])
    mu = symplectic_spectrum(R).mu[0]
    assert mu == pytest.approx(omega, rel=1e-12)
    # cross-check against the flow period 2 pi / omega
    period = 2.0 * math.pi / mu
    S = quad_propagator(QuadraticHamiltonian(R), period)
    assert np.max(np.abs(S.entries - np.eye(2))) <= 1e-8


def test_spectrum_rejects_bad_input():
    with pytest.raises(ValidationError):
        symplectic_spectrum(np.array([[1.0, 0.3], [0.0, 1.0]]))
    with pytest.raises(ValidationError, match="eigenvalue"):
        symplectic_spectrum(np.diag([1.0, -2.0]))


def test_decompose_identity():
    dec = williamson_decompose(np.eye(4))
    assert dec.residual <= 1e-10
    assert np.allclose(dec.spectrum.mu, [1.0, 1.0])


def test_decompose_diag_4_1():
    R = np.diag([4.0, 1.0])
    dec = williamson_decompose(R)
    D = dec.S.entries.T @ R @ dec.S.entries
    assert np.allclose(D, np.diag([2.0, 2.0]), atol=1e-10)
    assert dec.spectrum.mu[0] == pytest.approx(2.0, rel=1e-12)


def test_decompose_random_n5():
    R = random_posdef(10, seed=11)
    dec = williamson_decompose(R)
    assert dec.residual <= 1e-8 * np.max(np.abs(R))
    n = 5
    D = dec.S.entries.T @ R @ dec.S.entries
    mu = dec.spectrum.mu
    target = np.diag(np.concatenate([mu, mu]))
    assert np.max(np.abs(D - target)) <= 1e-8 * np.max(np.abs(R))
    # paired entries at (j, n+j)
    for j in range(n):
        assert D[j, j] == pytest.approx(D[n + j, n + j], rel=1e-8)


@given(st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=30, deadline=None)
def test_spectrum_scaling(lam):
    R = random_posdef(4, seed=2)
    mu = symplectic_spectrum(R).mu
    mu_scaled = symplectic_spectrum(lam * R).mu
    assert np.max(np.abs(mu_scaled - lam * mu) / (lam * mu)) <= 1e-10


def test_spectrum_congruence_invariance():
    R = random_posdef(6, seed=4)
    mu = symplectic_spectrum(R).mu
    for seed in range(10):
        S = random_symplectic(3, seed, 0.6).entries
        mu2 = symplectic_spectrum(S.T @ R @ S).mu
        assert np.max(np.abs(mu2 - mu) / mu) <= 1e-8


def test_flow_period_consistency():
    R = random_posdef(2, seed=9)
    mu = symplectic_spectrum(R).mu[0]
    S = quad_propagator(QuadraticHamiltonian(R), 2.0 * math.pi / mu)
    assert np.max(np.abs(S.entries - np.eye(2))) <= 1e-8


def test_normal_radii_unit_ball():
    assert np.allclose(normal_radii(np.eye(4), 0.5), [1.0, 1.0])


def test_normal_radii_scaled_plane():
    # 2I at level 1: x^2 + p^2 <= 1
    assert normal_radii(2.0 * np.eye(2), 1.0)[0] == pytest.approx(1.0)


def test_normal_radii_minimal_oscillator_ellipse():
    # p^2/(m hbar w) + x^2/(hbar/(m w)) = 1 at E = hbar w / 2
    m, omega, hbar = 1.7, 0.6, 1.0
    R = np.diag([m * omega**2, 1.0 / m])
    r = normal_radii(R, 0.5 * hbar * omega)[0]
    assert r == pytest.approx(math.sqrt(hbar * omega / omega), rel=1e-12)
    # enclosed area in normal coordinates is h/2
    assert math.pi * r**2 == pytest.approx(math.pi * hbar, rel=1e-12)


def test_normal_radii_level_validation():
    with pytest.raises(ValidationError):
        normal_radii(np.eye(2), 0.0)


def test_radii_descending_mu_ascending():
    spec = symplectic_spectrum(random_posdef(8, seed=21))
    assert np.all(np.diff(spec.mu) >= 0)
    assert np.all(np.diff(spec.radii) <= 0)
    assert np.array_equal(spec.omega, spec.mu)


def test_csv_export():
    spec = symplectic_spectrum(np.diag([4.0, 1.0]))
    buf = io.StringIO()
    text = spec.to_csv(buf)
    assert buf.getvalue() == text
    lines = text.strip().splitlines()
    assert lines[0] == "j,mu,radius,omega"
    j, mu, radius, omega = lines[1].split(",")
    assert j == "1"
    assert float(mu) == pytest.approx(2.0)
    assert float(radius) == pytest.approx(1.0)
    assert float(omega) == float(mu)
