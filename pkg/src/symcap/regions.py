"""Canonical phase-space regions and their exact symplectic capacities.

Supported shapes: balls, ellipsoids 1/2 (z-c) . M (z-c) <= level, solid tori
D^2(R_1) x ... x D^2(R_n), cylinders over a conjugate plane, and affine
symplectic images of any of these.  A symplectic capacity is monotone, scales
as lambda^2, is invariant under symplectomorphisms, and equals pi R^2 on balls
and cylinders; on ellipsoids and solid tori all capacities coincide and equal
pi * min_j R_j^2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .symcore import (
    DimensionError,
    SymplecticMatrix,
    ValidationError,
    as_phase_point,
)
from .williamson import _validate_posdef, normal_radii, symplectic_spectrum


class UnsupportedCombinationError(ValueError):
    """inclusion_check has no decision procedure for this pair of shapes."""


class InconsistentCertificateError(ValueError):
    """Caller-supplied inclusion certificates contradict non-squeezing."""


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_phase_point(self.center))
        if not self.radius > 0:
            raise ValidationError(f"ball radius must be > 0, got {self.radius}")

    @property
    def n(self) -> int:
        return len(self.center) // 2


@dataclass(frozen=True)
class Ellipsoid:
    """The set 1/2 (z - center) . hessian (z - center) <= level."""

    center: np.ndarray
    hessian: np.ndarray
    level: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_phase_point(self.center))
        object.__setattr__(self, "hessian", _validate_posdef(self.hessian))
        if not self.level > 0:
            raise ValidationError(f"ellipsoid level must be > 0, got {self.level}")
        if self.hessian.shape[0] != len(self.center):
            raise DimensionError("ellipsoid center and hessian dimensions differ")

    @property
    def n(self) -> int:
        return len(self.center) // 2


@dataclass(frozen=True)
class SolidTorus:
    """Product of disks D^2(R_1) x ... x D^2(R_n), one per conjugate plane."""

    radii: tuple

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii or any(r <= 0 for r in radii):
            raise ValidationError(f"solid-torus radii must all be > 0, got {radii}")

    @property
    def n(self) -> int:
        return len(self.radii)


@dataclass(frozen=True)
class Cylinder:
    """Z_j(center, r): the set x_j^2 + p_j^2 <= r^2 (about the center), j 1-based."""

    pair_index: int
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_phase_point(self.center))
        if not self.radius > 0:
            raise ValidationError(f"cylinder radius must be > 0, got {self.radius}")
        if not 1 <= self.pair_index <= self.n:
            raise ValidationError(
                f"conjugate-pair index {self.pair_index} out of range 1..{self.n}"
            )

    @property
    def n(self) -> int:
        return len(self.center) // 2


@dataclass(frozen=True)
class AffineImage:
    """The image S(inner) + shift of another region."""

    map: SymplecticMatrix
    shift: np.ndarray
    inner: "PhaseRegion"

    def __post_init__(self):
        object.__setattr__(self, "shift", as_phase_point(self.shift))
        if len(self.shift) != 2 * self.map.n:
            raise DimensionError("shift dimension does not match the map")
        if region_dim(self.inner) != self.map.n:
            raise DimensionError("inner region dimension does not match the map")

    @property
    def n(self) -> int:
        return self.map.n


PhaseRegion = Union[Ball, Ellipsoid, SolidTorus, Cylinder, AffineImage]


def region_dim(region: PhaseRegion) -> int:
    return region.n


@dataclass(frozen=True)
class CapacityValue:
    """A capacity in action units; bounds bracket the value when not exact."""

    value: float
    exact: bool
    bounds: tuple

    def __post_init__(self):
        lo, hi = self.bounds
        if not (lo <= self.value <= hi):
            raise ValidationError(f"capacity bounds {self.bounds} do not bracket {self.value}")

    def to_json(self) -> str:
        return json.dumps(
            {"value": self.value, "exact": self.exact, "bounds": list(self.bounds)},
            sort_keys=True,
        )


def _exact(value: float) -> CapacityValue:
    return CapacityValue(value=value, exact=True, bounds=(value, value))


def capacity(region: PhaseRegion) -> CapacityValue:
    """The (common) symplectic capacity of a canonical region.

    Balls and cylinders give pi R^2 (normalization axiom); ellipsoids and
    solid tori give pi * min_j R_j^2; affine images inherit the capacity of
    the underlying region (invariance axiom, no geometric recomputation).
    """
    if isinstance(region, Ball):
        return _exact(math.pi * region.radius**2)
    if isinstance(region, Cylinder):
        return _exact(math.pi * region.radius**2)
    if isinstance(region, SolidTorus):
        return _exact(math.pi * min(region.radii) ** 2)
    if isinstance(region, Ellipsoid):
        mu_max = symplectic_spectrum(region.hessian).mu[-1]
        return _exact(2.0 * math.pi * region.level / mu_max)
    if isinstance(region, AffineImage):
        return capacity(region.inner)
    raise ValidationError(f"not a phase region: {region!r}")


def scale_region(region: PhaseRegion, lam: float) -> PhaseRegion:
    """The dilate lambda * region about the origin (capacity scales as lambda^2)."""
    if lam == 0:
        raise ValidationError("scale factor must be nonzero")
    a = abs(lam)
    if isinstance(region, Ball):
        return Ball(lam * region.center, a * region.radius)
    if isinstance(region, Cylinder):
        return Cylinder(region.pair_index, lam * region.center, a * region.radius)
    if isinstance(region, SolidTorus):
        # disks are centrally symmetric, so the sign of lambda drops out
        return SolidTorus(tuple(a * r for r in region.radii))
    if isinstance(region, Ellipsoid):
        return Ellipsoid(lam * region.center, region.hessian / lam**2, region.level)
    if isinstance(region, AffineImage):
        return AffineImage(region.map, lam * region.shift, scale_region(region.inner, lam))
    raise ValidationError(f"not a phase region: {region!r}")


def map_region(region: PhaseRegion, S: SymplecticMatrix, shift=None) -> PhaseRegion:
    """Wrap the region in an affine symplectic image, collapsing nested layers."""
    if shift is None:
        shift = np.zeros(2 * S.n)
    shift = as_phase_point(shift)
    if len(shift) != 2 * S.n:
        raise DimensionError("shift dimension does not match the map")
    if region_dim(region) != S.n:
        raise DimensionError("region dimension does not match the map")
    if isinstance(region, AffineImage):
        # S(S0 z + c0) + c = (S S0) z + (S c0 + c)
        composed = SymplecticMatrix(S.entries @ region.map.entries)
        return AffineImage(composed, S.entries @ region.shift + shift, region.inner)
    return AffineImage(S, shift, region)


def sandwich_capacity(inner_radius: float, outer_radius: float, j: int) -> CapacityValue:
    """Capacity from a certified sandwich B(inner) <= Omega <= Z_j(outer).

    With equal radii the squeeze is tight and the capacity is exactly pi R^2;
    otherwise only the bounds (pi inner^2, pi outer^2) survive.
    """
    if not (inner_radius > 0 and outer_radius > 0):
        raise ValidationError("sandwich radii must be > 0")
    if inner_radius > outer_radius:
        raise InconsistentCertificateError(
            f"B({inner_radius}) inside Z_{j}({outer_radius}) contradicts non-squeezing"
        )
    lo = math.pi * inner_radius**2
    hi = math.pi * outer_radius**2
    if inner_radius == outer_radius:
        return _exact(lo)
    return CapacityValue(value=lo, exact=False, bounds=(lo, hi))


@dataclass(frozen=True)
class InclusionResult:
    holds: bool
    exact: bool  # False when decided by seeded sampling ("at confidence")
    witness: Optional[np.ndarray] = None

    def __bool__(self) -> bool:
        return bool(self.holds)


def _require_centered(region: PhaseRegion):
    center = getattr(region, "center", None)
    if center is not None and np.any(center != 0.0):
        raise UnsupportedCombinationError("inclusion_check requires centered regions")


def _plane_indices(n: int, j: int):
    if not 1 <= j <= n:
        raise ValidationError(f"conjugate-pair index {j} out of range 1..{n}")
    return [j - 1, n + j - 1]


def _ellipsoid_shadow_form(e: Ellipsoid, j: int) -> np.ndarray:
    """Quadratic form G of the shadow ellipse {w : w . G w <= 1} on plane j."""
    A = e.hessian / (2.0 * e.level)
    keep = _plane_indices(e.n, j)
    drop = [k for k in range(2 * e.n) if k not in keep]
    App = A[np.ix_(keep, keep)]
    if not drop:
        return App
    Apq = A[np.ix_(keep, drop)]
    Aqq = A[np.ix_(drop, drop)]
    return App - Apq @ np.linalg.solve(Aqq, Apq.T)


def _shadow_fits_disk(e: Ellipsoid, j: int, r: float, tol: float) -> bool:
    G = _ellipsoid_shadow_form(e, j)
    lam_min = np.linalg.eigvalsh((G + G.T) / 2.0)[0]
    return 1.0 / math.sqrt(lam_min) <= r * (1.0 + tol)


def _sample_boundary(region: PhaseRegion, samples: int, rng) -> np.ndarray:
    n2 = 2 * region_dim(region)
    if isinstance(region, Ball):
        g = rng.normal(size=(samples, n2))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        return region.center + region.radius * g
    if isinstance(region, Ellipsoid):
        g = rng.normal(size=(samples, n2))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        w, U = np.linalg.eigh(region.hessian)
        half_inv = (U * (1.0 / np.sqrt(w))) @ U.T
        return region.center + math.sqrt(2.0 * region.level) * g @ half_inv
    if isinstance(region, SolidTorus):
        n = region.n
        theta = rng.uniform(0.0, 2.0 * np.pi, size=(samples, n))
        pts = np.empty((samples, n2))
        radii = np.asarray(region.radii)
        pts[:, :n] = radii * np.cos(theta)
        pts[:, n:] = radii * np.sin(theta)
        return pts
    if isinstance(region, AffineImage):
        pts = _sample_boundary(region.inner, samples, rng)
        return pts @ region.map.entries.T + region.shift
    raise UnsupportedCombinationError(f"cannot sample the boundary of {type(region).__name__}")


def inclusion_check(inner: PhaseRegion, outer: PhaseRegion, tol: float = 1e-12,
                    samples: int = 10**5, seed: int = 0) -> InclusionResult:
    """Decide whether inner is contained in outer (both centered, same n).

    Analytic for Ball/Ellipsoid/SolidTorus into Cylinder, Ellipsoid into
    SolidTorus, and Ball into Ellipsoid.  Affine images going into a cylinder
    fall back to seeded boundary sampling: a negative verdict carries a
    witness point, a positive one is only "at confidence".  Anything else
    raises UnsupportedCombinationError.
    """
    if region_dim(inner) != region_dim(outer):
        raise DimensionError("regions live in different dimensions")
    n = region_dim(inner)

    if isinstance(outer, Cylinder):
        _require_centered(outer)
        j, r = outer.pair_index, outer.radius
        if isinstance(inner, Ball):
            _require_centered(inner)
            return InclusionResult(inner.radius <= r * (1.0 + tol), True)
        if isinstance(inner, SolidTorus):
            return InclusionResult(inner.radii[j - 1] <= r * (1.0 + tol), True)
        if isinstance(inner, Ellipsoid):
            _require_centered(inner)
            return InclusionResult(_shadow_fits_disk(inner, j, r, tol), True)
        if isinstance(inner, AffineImage):
            rng = np.random.default_rng(seed)
            pts = _sample_boundary(inner, samples, rng)
            idx = _plane_indices(n, j)
            d2 = pts[:, idx[0]] ** 2 + pts[:, idx[1]] ** 2
            bad = np.argmax(d2)
            if d2[bad] > r**2 * (1.0 + tol):
                return InclusionResult(False, True, witness=pts[bad])
            return InclusionResult(True, False)

    if isinstance(outer, SolidTorus) and isinstance(inner, Ellipsoid):
        _require_centered(inner)
        ok = all(_shadow_fits_disk(inner, j, outer.radii[j - 1], tol)
                 for j in range(1, n + 1))
        return InclusionResult(ok, True)

    if isinstance(outer, Ellipsoid) and isinstance(inner, Ball):
        _require_centered(inner)
        _require_centered(outer)
        lam_max = np.linalg.eigvalsh(outer.hessian)[-1]
        ok = 0.5 * inner.radius**2 * lam_max <= outer.level * (1.0 + tol)
        return InclusionResult(ok, True)

    raise UnsupportedCombinationError(
        f"no inclusion test for {type(inner).__name__} into {type(outer).__name__}"
    )


# --- JSON interchange -------------------------------------------------------

def region_to_dict(region: PhaseRegion) -> dict:
    if isinstance(region, Ball):
        return {"variant": "Ball", "center": region.center.tolist(), "R": region.radius}
    if isinstance(region, Ellipsoid):
        return {"variant": "Ellipsoid", "center": region.center.tolist(),
                "hessian": region.hessian.tolist(), "level": region.level}
    if isinstance(region, SolidTorus):
        return {"variant": "SolidTorus", "radii": list(region.radii)}
    if isinstance(region, Cylinder):
        return {"variant": "Cylinder", "j": region.pair_index,
                "center": region.center.tolist(), "r": region.radius}
    if isinstance(region, AffineImage):
        return {"variant": "AffineImage",
                "S": {"n": region.map.n, "rows": region.map.entries.tolist()},
                "shift": region.shift.tolist(),
                "inner": region_to_dict(region.inner)}
    raise ValidationError(f"not a phase region: {region!r}")


def region_from_dict(obj: dict) -> PhaseRegion:
    if not isinstance(obj, dict) or "variant" not in obj:
        raise ValidationError('region JSON must be an object with a "variant" key')
    variant = obj["variant"]
    if variant == "Ball":
        n = obj.get("n", 1)
        center = obj.get("center", [0.0] * (2 * n))
        return Ball(center, float(obj["R"]))
    if variant == "Ellipsoid":
        hessian = np.asarray(obj["hessian"], dtype=float)
        center = obj.get("center", [0.0] * hessian.shape[0])
        return Ellipsoid(center, hessian, float(obj.get("level", 1.0)))
    if variant == "SolidTorus":
        return SolidTorus(tuple(float(r) for r in obj["radii"]))
    if variant == "Cylinder":
        n = obj.get("n", max(1, int(obj["j"])))
        center = obj.get("center", [0.0] * (2 * n))
        return Cylinder(int(obj["j"]), center, float(obj["r"]))
    if variant == "AffineImage":
        S = SymplecticMatrix.from_dict(obj["S"])
        shift = obj.get("shift", [0.0] * (2 * S.n))
        return AffineImage(S, shift, region_from_dict(obj["inner"]))
    raise ValidationError(f"unknown region variant {variant!r}")


def region_from_json(text: str) -> PhaseRegion:
    return region_from_dict(json.loads(text))


def region_to_json(region: PhaseRegion) -> str:
    return json.dumps(region_to_dict(region), sort_keys=True)
