"""Shadow areas of linearly transformed balls and non-squeezing verification.

The image S(B(R)) of the ball under a symplectic matrix S is the ellipsoid
z . (S S^T)^{-1} z <= R^2.  Its orthogonal projection on the conjugate plane
(x_j, p_j) is an ellipse of area pi R^2 sqrt(det(P M P^T)) with M = S S^T and
P the row selector of the plane; the central slice by that plane has area
pi R^2 / sqrt(det(P M^{-1} P^T)).  Linear non-squeezing says the projection
area is never below pi R^2.

The slice area is <= pi R^2 (with equality when the preimage plane is
invariant under the standard rotation J); only that inequality is asserted
here, and the verification report tracks both ratios.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from .symcore import SymplecticMatrix, ValidationError, random_symplectic

NONSQUEEZE_TOL = 1e-9  # dominates determinant round-off for n <= 10


def _plane(S: SymplecticMatrix, j: int):
    n = S.n
    if not 1 <= j <= n:
        raise ValidationError(f"conjugate-pair index {j} out of range 1..{n}")
    return [j - 1, n + j - 1]


def projection_area(S: SymplecticMatrix, R: float, j: int) -> float:
    """Area of the orthogonal projection of S(B(R)) on the (x_j, p_j) plane."""
    if not R > 0:
        raise ValidationError(f"ball radius must be > 0, got {R}")
    idx = _plane(S, j)
    M = S.entries @ S.entries.T
    block = M[np.ix_(idx, idx)]
    return math.pi * R**2 * math.sqrt(np.linalg.det(block))


def intersection_area(S: SymplecticMatrix, R: float, j: int) -> float:
    """Area of the central slice of S(B(R)) by the (x_j, p_j) plane."""
    if not R > 0:
        raise ValidationError(f"ball radius must be > 0, got {R}")
    idx = _plane(S, j)
    Minv = np.linalg.inv(S.entries @ S.entries.T)
    block = Minv[np.ix_(idx, idx)]
    return math.pi * R**2 / math.sqrt(np.linalg.det(block))


@dataclass(frozen=True)
class ShadowReport:
    j: int
    projection_area: float
    intersection_area: float
    projection_ratio: float  # area / (pi R^2)
    intersection_ratio: float

    def __post_init__(self):
        slack = NONSQUEEZE_TOL * self.projection_area
        if not self.projection_area + slack >= self.intersection_area > 0:
            raise ValidationError("shadow areas must satisfy projection >= intersection > 0")


def shadow_report(S: SymplecticMatrix, R: float, j: int) -> ShadowReport:
    bound = math.pi * R**2
    proj = projection_area(S, R, j)
    inter = intersection_area(S, R, j)
    return ShadowReport(j=j, projection_area=proj, intersection_area=inter,
                        projection_ratio=proj / bound, intersection_ratio=inter / bound)


def _ball_samples(n2: int, R: float, samples: int, rng) -> np.ndarray:
    """Uniform samples in the 2n-ball: normalized Gaussians with radial correction."""
    g = rng.normal(size=(samples, n2))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = R * rng.uniform(size=(samples, 1)) ** (1.0 / n2)
    return r * g


def mc_projection_area(S: SymplecticMatrix, R: float, j: int,
                       samples: int = 10**6, seed: int = 0) -> float:
    """Monte-Carlo oracle: convex-hull area of projected sphere samples.

    The shadow of the convex body S(B(R)) equals the projection of its
    boundary S(|u| = R), so sampling the sphere instead of the solid ball
    keeps the projected density positive at the shadow boundary and the hull
    area converges well inside 1% at 10^6 samples.
    """
    idx = _plane(S, j)
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(samples, 2 * S.n))
    g *= R / np.linalg.norm(g, axis=1, keepdims=True)
    pts = g @ S.entries.T
    return float(ConvexHull(pts[:, idx]).volume)


def mc_intersection_area(S: SymplecticMatrix, R: float, j: int,
                         samples: int = 10**6, seed: int = 0) -> float:
    """Monte-Carlo oracle: rejection-sampled area of the central plane slice.

    Membership is tested through |S^{-1} z| <= R only, independent of the
    closed-form determinant expression.  A coarse pass tightens the sampling
    box before the main run.
    """
    idx = _plane(S, j)
    rng = np.random.default_rng(seed)
    Sinv = S.inverse().entries
    cols = Sinv[:, idx]  # preimage of a plane point (w1, w2) is cols @ w

    def inside(w):
        return np.einsum("ij,ij->i", w @ cols.T, w @ cols.T) <= R**2

    half = R * np.linalg.norm(S.entries, 2)  # slice fits in this box
    coarse = rng.uniform(-half, half, size=(10**4, 2))
    hits = coarse[inside(coarse)]
    if len(hits):
        half = min(half, 1.2 * float(np.max(np.abs(hits))))
    pts = rng.uniform(-half, half, size=(samples, 2))
    frac = float(np.count_nonzero(inside(pts))) / samples
    return (2.0 * half) ** 2 * frac


@dataclass
class NonsqueezeReport:
    n: int
    trials: int
    seed: int
    violations: list = field(default_factory=list)
    min_projection_ratio: float = math.inf
    max_intersection_ratio: float = 0.0
    worst_case_matrix: np.ndarray = None
    intersection_equality_cases: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "min_ratio": self.min_projection_ratio,
            "max_intersection_ratio": self.max_intersection_ratio,
            "intersection_equality_cases": self.intersection_equality_cases,
            "worst_case_matrix": self.worst_case_matrix.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def nonsqueeze_verify(n: int, trials: int, seed: int, R: float = 1.0,
                      spread: float = 1.0, tol: float = NONSQUEEZE_TOL) -> NonsqueezeReport:
    """Batch verification of linear non-squeezing over random symplectic maps.

    For each trial and each conjugate plane, checks projection_area >=
    pi R^2 (1 - tol) and intersection_area <= projection_area.  Violations
    (which would indicate a bug) are collected in the report, never raised.
    """
    if trials < 1:
        raise ValidationError(f"need trials >= 1, got {trials}")
    bound = math.pi * R**2
    report = NonsqueezeReport(n=n, trials=trials, seed=seed)
    for t in range(trials):
        S = random_symplectic(n, (seed * 1_000_003 + t) % 2**63, spread)
        for j in range(1, n + 1):
            rep = shadow_report(S, R, j)
            if rep.projection_ratio < report.min_projection_ratio:
                report.min_projection_ratio = rep.projection_ratio
                report.worst_case_matrix = np.asarray(S.entries)
            report.max_intersection_ratio = max(report.max_intersection_ratio,
                                                rep.intersection_ratio)
            if abs(rep.intersection_area - bound) <= tol * bound:
                report.intersection_equality_cases += 1
            if rep.projection_area < bound * (1.0 - tol) or \
                    rep.intersection_area > rep.projection_area * (1.0 + tol):
                report.violations.append({"trial": t, "j": j,
                                          "projection_ratio": rep.projection_ratio,
                                          "intersection_ratio": rep.intersection_ratio,
                                          "matrix": S.entries.tolist()})
    return report
