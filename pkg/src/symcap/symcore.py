"""Phase-space conventions, symplectic matrices, and exact quadratic flows.

Coordinates are ordered (x_1, ..., x_n, p_1, ..., p_n); the conjugate pair j
occupies indices (j, n+j) (0-based).  The standard-form matrix is

    J = [[0,  I],
         [-I, 0]]

so that sigma(z, z') = (J z) . z' = p . x' - p' . x.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    """Matrix or vector has the wrong shape for phase space."""


class ValidationError(ValueError):
    """An input fails a structural invariant."""


class DegenerateInputError(ValueError):
    """An input is degenerate (e.g. zero energy where a ratio is needed)."""


def _maxabs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def standard_form_matrix(n: int) -> np.ndarray:
    """Return the 2n x 2n matrix J of the standard symplectic form."""
    if n < 1:
        raise DimensionError(f"need n >= 1, got {n}")
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def as_phase_point(z) -> np.ndarray:
    """Coerce to a 1-d float array of even length >= 2."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.ndim != 1 or len(z) < 2 or len(z) % 2:
        raise DimensionError(f"phase point must have even length >= 2, got shape {z.shape}")
    return z


def symplectic_form(z, zp) -> float:
    """Evaluate sigma(z, z') = p . x' - p' . x."""
    z = as_phase_point(z)
    zp = as_phase_point(zp)
    if len(z) != len(zp):
        raise DimensionError("phase points live in different dimensions")
    n = len(z) // 2
    return float(z[n:] @ zp[:n] - zp[n:] @ z[:n])


class SymplecticCheck(NamedTuple):
    ok: bool
    residual: float


def is_symplectic(M, tol: float = DEFAULT_TOL) -> SymplecticCheck:
    """Test whether M preserves the standard form.

    Returns (ok, residual) where residual = max|M^T J M - J| and the test is
    residual <= tol * max|M|^2.  The residual is returned regardless of the
    verdict so callers can report near-misses.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] % 2:
        raise DimensionError(f"symplectic matrices have even order, got {M.shape[0]}")
    n = M.shape[0] // 2
    J = standard_form_matrix(n)
    residual = _maxabs(M.T @ J @ M - J)
    scale = max(_maxabs(M) ** 2, np.finfo(float).tiny)
    return SymplecticCheck(residual <= tol * scale, residual)


@dataclass(frozen=True)
class SymplecticMatrix:
    """A 2n x 2n real matrix certified to satisfy S^T J S = J.

    Construction validates the defining relation (relative tolerance
    ``tol``) and det S = 1; invalid matrices raise ValidationError.
    """

    entries: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        check = is_symplectic(entries, self.tol)
        if not check.ok:
            raise ValidationError(
                f"matrix is not symplectic: residual {check.residual:.3e} "
                f"exceeds {self.tol:.1e} * |S|^2"
            )
        det = float(np.linalg.det(entries))
        if abs(det - 1.0) > max(self.tol, self.tol * abs(det)) * 10:
            raise ValidationError(f"det S = {det!r}, expected 1")

    @property
    def n(self) -> int:
        return self.entries.shape[0] // 2

    def __matmul__(self, other):
        if isinstance(other, SymplecticMatrix):
            return SymplecticMatrix(self.entries @ other.entries, max(self.tol, other.tol))
        return self.entries @ np.asarray(other, dtype=float)

    def transform(self, z) -> np.ndarray:
        """Image of a phase point under the linear map."""
        z = as_phase_point(z)
        if len(z) != 2 * self.n:
            raise DimensionError("phase point dimension does not match matrix")
        return self.entries @ z

    def inverse(self) -> "SymplecticMatrix":
        # S^{-1} = -J S^T J, exact for group elements
        J = standard_form_matrix(self.n)
        return SymplecticMatrix(-J @ self.entries.T @ J, self.tol)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "rows": self.entries.tolist()}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, tol: float = DEFAULT_TOL) -> "SymplecticMatrix":
        obj = json.loads(text)
        return cls.from_dict(obj, tol=tol)

    @classmethod
    def from_dict(cls, obj: dict, tol: float = DEFAULT_TOL) -> "SymplecticMatrix":
        if not isinstance(obj, dict) or set(obj) != {"n", "rows"}:
            raise ValidationError('matrix JSON must have exactly the keys "n" and "rows"')
        n = obj["n"]
        rows = np.asarray(obj["rows"], dtype=float)
        if not (isinstance(n, int) and n >= 1):
            raise ValidationError(f'"n" must be a positive integer, got {n!r}')
        if rows.shape != (2 * n, 2 * n):
            raise ValidationError(f"rows have shape {rows.shape}, expected {(2*n, 2*n)}")
        return cls(rows, tol)


def random_symplectic(n: int, seed: int, spread: float = 1.0,
                      tol: float = DEFAULT_TOL) -> SymplecticMatrix:
    """Draw a deterministic pseudo-random element of Sp(n).

    Built as a product of two exponentials exp(J A) for random symmetric A
    (entries scaled by ``spread``), composed with a random rotation in every
    conjugate plane.  Group membership is exact up to matrix-exponential
    accuracy, and the factors mix position and momentum coordinates.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if not spread > 0:
        raise ValidationError(f"need spread > 0, got {spread}")
    rng = np.random.default_rng(seed)
    J = standard_form_matrix(n)
    S = np.eye(2 * n)
    for _ in range(2):
        A = rng.normal(scale=spread, size=(2 * n, 2 * n))
        A = (A + A.T) / 2.0
        S = S @ expm(J @ A)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    c, s = np.diag(np.cos(theta)), np.diag(np.sin(theta))
    rot = np.block([[c, s], [-s, c]])
    return SymplecticMatrix(S @ rot, tol)


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """H(z) = 1/2 z . R z with R symmetric positive definite."""

    hessian: np.ndarray = field()

    def __post_init__(self):
        R = np.array(self.hessian, dtype=float)
        R.setflags(write=False)
        object.__setattr__(self, "hessian", R)
        if R.ndim != 2 or R.shape[0] != R.shape[1] or R.shape[0] % 2:
            raise DimensionError(f"Hessian must be square of even order, got {R.shape}")
        scale = max(_maxabs(R), np.finfo(float).tiny)
        if _maxabs(R - R.T) > 1e-12 * scale:
            raise ValidationError("Hessian is not symmetric within 1e-12 relative")
        w = np.linalg.eigvalsh(R)
        if w[0] <= 0:
            raise ValidationError(f"Hessian is not positive definite: eigenvalue {w[0]!r}")

    @property
    def n(self) -> int:
        return self.hessian.shape[0] // 2

    def value(self, z) -> float:
        z = as_phase_point(z)
        return 0.5 * float(z @ self.hessian @ z)


def quad_propagator(H: QuadraticHamiltonian, t: float,
                    tol: float = DEFAULT_TOL) -> SymplecticMatrix:
    """Exact flow map exp(t J R) of the quadratic Hamiltonian.

    Satisfies the composition law propagator(t1) @ propagator(t2) =
    propagator(t1 + t2) and is symplectic for every t.
    """
    if not np.isfinite(t):
        raise ValidationError(f"time must be finite, got {t!r}")
    J = standard_form_matrix(H.n)
    return SymplecticMatrix(expm(float(t) * (J @ H.hessian)), tol)


def flow_energy_drift(H: QuadraticHamiltonian, z0, times) -> float:
    """Max relative energy drift |H(z(t)) - H(z0)| / H(z0) over sample times."""
    z0 = as_phase_point(z0)
    times = np.asarray(times, dtype=float)
    if not np.all(np.isfinite(times)):
        raise ValidationError("times must be finite")
    e0 = H.value(z0)
    if e0 <= 0.0:
        raise DegenerateInputError("H(z0) = 0: relative drift undefined for z0 = 0")
    drift = 0.0
    for t in np.atleast_1d(times):
        zt = quad_propagator(H, t).transform(z0)
        drift = max(drift, abs(H.value(zt) - e0) / e0)
    return drift
