"""Semiclassical energy levels and the capacity lower bound.

Quantized invariant tori have actions I_j = (N_j + m_j/4) hbar.  For a
Hamiltonian that increases in each action, every level sits at or above the
ground value K(hbar/2, ..., hbar/2), and the quantized torus always encloses
at least half a Planck cell (capacity >= pi hbar) in every conjugate plane.
"""

import math

from symcap import (
    ActionHamiltonian,
    action_quadrature_1d,
    capacity_condition,
    energy_levels,
    ground_bound,
    oscillator_hamiltonian,
    verify_energy_bound,
)


def main():
    K = oscillator_hamiltonian([1.0, 2.0])
    spec = energy_levels(K, maslov=(2, 2), n_max=2)
    print("anisotropic oscillator levels (omega = 1, 2):")
    for e in spec.entries:
        check = capacity_condition(e, hbar=1.0)
        print(f"  N = {e.N}: E = {e.energy:.2f}, torus capacity "
              f"{check.capacity / math.pi:.2f} pi, "
              f">= pi hbar: {check.satisfied}")

    rep = verify_energy_bound(K, spec)
    print(f"ground bound K(hbar/2, hbar/2) = {rep.ground}; "
          f"all levels above it: {rep.ok}")

    coupled = ActionHamiltonian(
        K=lambda I: float(I[0] ** 2 + I[1] ** 2 + I[0] * I[1]),
        n=2, monotone=True)
    print("coupled quartic-in-action ground bound:", ground_bound(coupled))

    # 1D action from a phase-space quadrature: a weak quartic perturbation
    # shrinks the orbit and hence the action at fixed energy
    H = lambda x, p: 0.5 * p**2 + 0.5 * x**2 + 0.05 * x**4
    I = action_quadrature_1d(H, 1.0)
    print(f"quartic well action at E = 1: {I:.8f} (harmonic value 1)")


if __name__ == "__main__":
    main()
