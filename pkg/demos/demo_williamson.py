"""Diagonalize a random positive-definite quadratic form symplectically.

Every positive-definite Hamiltonian Hessian can be brought to a diagonal
normal form S^T R S = diag(mu, mu) by a symplectic matrix S.  The diagonal
entries come in equal pairs -- the symplectic spectrum -- and fix both the
oscillation frequencies of the flow and the principal radii of the energy
ellipsoid.
"""

import numpy as np

from symcap import (
    QuadraticHamiltonian,
    normal_radii,
    quad_propagator,
    symplectic_spectrum,
    williamson_decompose,
)


def main():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(6, 6))
    R = A @ A.T + 0.1 * np.eye(6)

    spec = symplectic_spectrum(R)
    print("symplectic spectrum:", np.round(spec.mu, 6))
    print("normal radii at level 1/2:", np.round(normal_radii(R, 0.5), 6))

    dec = williamson_decompose(R)
    D = dec.S.entries.T @ R @ dec.S.entries
    print("normal form diag:", np.round(np.diag(D), 6))
    print("off-diagonal residual:", f"{dec.residual:.2e}")

    # the slowest mode sets the recurrence time of the linear flow
    period = 2.0 * np.pi / spec.mu[0]
    S = quad_propagator(QuadraticHamiltonian(R), period)
    # one full period of the slow mode does not close the whole orbit unless
    # the frequencies are commensurate, so just report the mode frequencies
    print("flow at t = 2 pi / mu_min is symplectic:", S.n == 3)
    print("frequencies (= spectrum):", np.round(spec.omega, 6))


if __name__ == "__main__":
    main()
