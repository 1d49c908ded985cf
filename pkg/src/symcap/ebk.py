"""EBK semiclassical quantization for action Hamiltonians K(I).

Quantized actions are I_j = (N_j + m_j / 4) hbar with N_j >= 0 integer and
m_j the Maslov index of the j-th basic cycle; the invariant torus has radii
R_j = sqrt(2 I_j) and semiclassical energy E_N = K(I).  For even m_j >= 2 the
solid torus of a quantized entry has capacity pi min R_j^2 >= h/2, and for
monotone K every level is bounded below by K(hbar/2, ..., hbar/2).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .regions import SolidTorus, capacity
from .symcore import DegenerateInputError, ValidationError


class InvalidMaslovError(ValueError):
    """A basic-cycle Maslov index is <= 0 (torus radii would collapse)."""


class TheoremHypothesisError(ValueError):
    """A result was requested outside its hypotheses (non-monotone K)."""


class NonCompactOrbitError(ValueError):
    """The 1D energy level curve is empty or unbounded."""


@dataclass(frozen=True)
class ActionHamiltonian:
    """An energy function K of the action variables (I_1, ..., I_n).

    ``gradient`` may be omitted; central finite differences are used then.
    ``monotone`` claims all dK/dI_j > 0 on the positive orthant and can be
    spot-checked with :meth:`check_monotone`.
    """

    K: Callable
    n: int
    gradient: Optional[Callable] = None
    monotone: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"need n >= 1, got {self.n}")

    def energy(self, actions) -> float:
        actions = np.asarray(actions, dtype=float)
        if actions.shape != (self.n,):
            raise ValidationError(f"expected {self.n} actions, got shape {actions.shape}")
        return float(self.K(actions))

    def grad(self, actions) -> np.ndarray:
        actions = np.asarray(actions, dtype=float)
        if self.gradient is not None:
            return np.asarray(self.gradient(actions), dtype=float)
        return self._fd_grad(actions)

    def _fd_grad(self, actions) -> np.ndarray:
        out = np.empty(self.n)
        for j in range(self.n):
            h = 1e-6 * max(abs(actions[j]), 1.0)
            up, dn = actions.copy(), actions.copy()
            up[j] += h
            dn[j] -= h
            out[j] = (self.K(up) - self.K(dn)) / (2.0 * h)
        return out

    def check_monotone(self, samples: int = 1000, seed: int = 0,
                       box: tuple = (1e-3, 10.0)) -> bool:
        """Spot-check dK/dI > 0 (and gradient vs finite differences) on the orthant."""
        rng = np.random.default_rng(seed)
        lo, hi = box
        for _ in range(samples):
            I = rng.uniform(lo, hi, size=self.n)
            g = self.grad(I)
            if np.any(g <= 0):
                return False
            if self.gradient is not None:
                fd = self._fd_grad(I)
                scale = np.maximum(np.abs(g), 1e-12)
                if np.max(np.abs(g - fd) / scale) > 1e-5:
                    raise ValidationError("declared gradient disagrees with finite differences")
        return True


def oscillator_hamiltonian(omegas) -> ActionHamiltonian:
    """K(I) = sum_j omega_j I_j with all omega_j > 0."""
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas <= 0):
        raise ValidationError("oscillator frequencies must be > 0")
    return ActionHamiltonian(K=lambda I: float(np.dot(omegas, I)), n=len(omegas),
                             gradient=lambda I: omegas.copy(), monotone=True)


def _validate_quantization_inputs(maslov, n_max, hbar):
    maslov = tuple(int(m) for m in maslov)
    if any(m < 1 for m in maslov):
        raise InvalidMaslovError(f"basic-cycle Maslov indices must be >= 1, got {maslov}")
    if n_max < 0:
        raise ValidationError(f"need N_max >= 0, got {n_max}")
    if not hbar > 0:
        raise ValidationError(f"need hbar > 0, got {hbar}")
    return maslov


def quantized_actions(maslov, n_max: int, hbar: float = 1.0):
    """All (N, I) pairs with 0 <= N_j <= N_max and I_j = (N_j + m_j/4) hbar."""
    maslov = _validate_quantization_inputs(maslov, n_max, hbar)
    n = len(maslov)
    out = []
    for N in itertools.product(range(n_max + 1), repeat=n):
        I = np.array([(N[j] + maslov[j] / 4.0) * hbar for j in range(n)])
        out.append((N, I))
    return out


def torus_radii_from_actions(actions) -> np.ndarray:
    """R_j = sqrt(2 I_j) for the invariant torus carrying the actions."""
    actions = np.atleast_1d(np.asarray(actions, dtype=float))
    if np.any(actions <= 0):
        raise ValidationError(f"actions must be > 0, got {actions}")
    return np.sqrt(2.0 * actions)


@dataclass(frozen=True)
class EBKLevel:
    N: tuple
    maslov: tuple
    actions: np.ndarray
    radii: np.ndarray
    energy: float


@dataclass(frozen=True)
class EBKSpectrum:
    entries: tuple
    hbar: float

    def to_dict(self) -> dict:
        return {"hbar": self.hbar,
                "levels": [{"N": list(e.N), "maslov": list(e.maslov),
                            "actions": e.actions.tolist(), "radii": e.radii.tolist(),
                            "energy": e.energy} for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self, path_or_file=None) -> str:
        h = 2.0 * math.pi * self.hbar
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["N", "actions", "radii", "energy", "capacity", "satisfied"])
        for e in self.entries:
            check = capacity_condition(e, self.hbar)
            writer.writerow([" ".join(map(str, e.N)),
                             " ".join(repr(a) for a in e.actions),
                             " ".join(repr(r) for r in e.radii),
                             repr(e.energy), repr(check.capacity), check.satisfied])
        text = buf.getvalue()
        if path_or_file is not None:
            if hasattr(path_or_file, "write"):
                path_or_file.write(text)
            else:
                with open(path_or_file, "w") as fh:
                    fh.write(text)
        return text


def energy_levels(K: ActionHamiltonian, maslov, n_max: int, hbar: float = 1.0) -> EBKSpectrum:
    """Semiclassical spectrum E_N = K((N + m/4) hbar) over the full N grid."""
    maslov = _validate_quantization_inputs(maslov, n_max, hbar)
    if len(maslov) != K.n:
        raise ValidationError("Maslov tuple length does not match K")
    entries = []
    for N, I in quantized_actions(maslov, n_max, hbar):
        try:
            energy = K.energy(I)
        except Exception as exc:
            raise ValidationError(f"K failed at actions {I.tolist()}: {exc}") from exc
        entries.append(EBKLevel(N=N, maslov=maslov, actions=I,
                                radii=torus_radii_from_actions(I), energy=energy))
    entries.sort(key=lambda e: (e.energy, e.N))
    return EBKSpectrum(entries=tuple(entries), hbar=hbar)


def ground_bound(K: ActionHamiltonian, hbar: float = 1.0) -> float:
    """The capacity-based lower bound K(hbar/2, ..., hbar/2)."""
    if not hbar > 0:
        raise ValidationError(f"need hbar > 0, got {hbar}")
    return K.energy(np.full(K.n, hbar / 2.0))


@dataclass(frozen=True)
class CapacityCheck:
    capacity: float
    satisfied: bool


def capacity_condition(entry: EBKLevel, hbar: float = 1.0) -> CapacityCheck:
    """Check c(solid torus of the entry) >= h/2 = pi hbar.

    For even Maslov indices m_j >= 2 this holds automatically, since
    R_j^2 = (2 N_j + m_j/2) hbar >= hbar.
    """
    if entry.radii is None or len(entry.radii) == 0:
        raise ValidationError("spectrum entry has no torus radii")
    value = capacity(SolidTorus(tuple(entry.radii))).value
    half_h = math.pi * hbar
    return CapacityCheck(capacity=value, satisfied=value >= half_h - 1e-12)


@dataclass(frozen=True)
class EnergyBoundReport:
    ground: float
    margins: tuple
    ok: bool


def verify_energy_bound(K: ActionHamiltonian, spectrum: EBKSpectrum) -> EnergyBoundReport:
    """Assert every level satisfies E_N >= K(hbar/2, ..., hbar/2).

    Requires the monotonicity hypothesis (all frequencies dK/dI_j > 0),
    which is spot-checked before use.
    """
    if not K.monotone:
        raise TheoremHypothesisError("energy bound requires a monotone action Hamiltonian")
    if not K.check_monotone():
        raise TheoremHypothesisError("monotone flag failed its spot check")
    e0 = ground_bound(K, spectrum.hbar)
    margins = tuple(e.energy - e0 for e in spectrum.entries)
    return EnergyBoundReport(ground=e0, margins=margins,
                             ok=all(m >= -1e-12 for m in margins))


@dataclass(frozen=True)
class PlaneAreaCheck:
    j: int
    area: float
    satisfied: bool


def projection_area_bound(entry: EBKLevel, hbar: float = 1.0):
    """Per-plane check that the torus shadow area pi R_j^2 is >= h/2."""
    if entry.radii is None or len(entry.radii) == 0:
        raise ValidationError("spectrum entry has no torus radii")
    half_h = math.pi * hbar
    return [PlaneAreaCheck(j=j + 1, area=math.pi * r**2,
                           satisfied=math.pi * r**2 >= half_h - 1e-12)
            for j, r in enumerate(entry.radii)]


# --- 1D action quadrature ----------------------------------------------------

def _bracket_turning_points(V, energy, x0=0.0, max_range=1e6):
    if V(x0) > energy:
        # walk toward lower potential to find a classically allowed point
        for step in 2.0 ** np.arange(-6, 21):
            for cand in (x0 - step, x0 + step):
                if V(cand) <= energy:
                    x0 = cand
                    break
            else:
                continue
            break
        else:
            raise NonCompactOrbitError("energy level set appears empty")

    def expand(direction):
        step = 1e-3
        x = x0
        while True:
            nxt = x + direction * step
            if abs(nxt) > max_range:
                raise NonCompactOrbitError("no turning point found: orbit not compact")
            if V(nxt) > energy:
                return brentq(lambda s: V(s) - energy, min(x, nxt), max(x, nxt),
                              xtol=1e-12, rtol=8.9e-16)
            x = nxt
            step *= 2.0

    return expand(-1.0), expand(+1.0)


def action_quadrature_1d(hamiltonian: Callable, energy: float,
                         rel_tol: float = 1e-10) -> float:
    """Action I = (1/2 pi) * (area enclosed by the level curve H(x, p) = E).

    Assumes a kinetic-plus-potential profile: H is even-increasing in |p| at
    fixed x, with V(x) = H(x, 0).  The momentum branches p+(x) >= 0 >= p-(x)
    are found by bisection and integrated between the turning points after a
    sine substitution that absorbs the square-root endpoints.
    """
    V = lambda x: hamiltonian(x, 0.0)
    x_lo, x_hi = _bracket_turning_points(V, energy)
    if not x_hi > x_lo:
        raise NonCompactOrbitError("degenerate level set (turning points coincide)")

    def branch(x, sign):
        if V(x) >= energy:
            return 0.0
        hi = 1.0
        while hamiltonian(x, sign * hi) < energy:
            hi *= 2.0
            if hi > 1e12:
                raise NonCompactOrbitError("level set unbounded in momentum")
        return abs(brentq(lambda p: hamiltonian(x, sign * p) - energy, 0.0, hi,
                          xtol=1e-14, rtol=8.9e-16))

    mid = 0.5 * (x_lo + x_hi)
    half = 0.5 * (x_hi - x_lo)

    def integrand(theta):
        x = mid + half * math.sin(theta)
        width = branch(x, +1.0) + branch(x, -1.0)
        return width * half * math.cos(theta)

    area, err = quad(integrand, -math.pi / 2, math.pi / 2,
                     epsabs=0.0, epsrel=rel_tol, limit=200)
    if energy != 0 and err > 10 * rel_tol * abs(area):
        raise DegenerateInputError(f"quadrature error estimate {err:.3e} too large")
    return area / (2.0 * math.pi)
