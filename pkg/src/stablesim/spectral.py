"""Finite spectral measures on unit spheres and their basic functionals.

Two spheres are supported: the Euclidean sphere S^{d-1} used by the additive
cone, and the L-infinity sphere (the set where the max-norm equals one,
intersected with the nonnegative orthant) used by the max cone.  A measure is
one of three variants:

* ``Atoms``           -- a finite list of (point, weight) pairs,
* ``UniformLInf``     -- the uniform measure on the L-inf sphere,
* ``AngularDensity``  -- a density in the angle on the Euclidean circle (d=2).

Only the builtin densities ``f1``, ``f2``, ``f3`` and ``uniform`` are exposed
through the JSON interface; arbitrary user densities are out of scope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._quad import integrate

ATOL_SPHERE = 1e-12
ATOL_WEIGHTS = 1e-12
ATOL_DENSITY_MASS = 1e-9
QUAD_TOL = 1e-10
ANGULAR_TABLE_BINS = 4096

TWO_PI = 2.0 * math.pi


class Sphere(str, enum.Enum):
    EUCLIDEAN = "euclid"
    LINF = "linf"


def sphere_norm(sphere: Sphere, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if sphere is Sphere.EUCLIDEAN:
        return np.sqrt(np.sum(x * x, axis=-1))
    return np.max(np.abs(x), axis=-1)


# ----------------------------------------------------------------- builtins

def _f1(theta: float) -> float:
    # 1/pi on the first and third quadrants of the circle
    t = theta % TWO_PI
    if 0.0 <= t < 0.5 * math.pi or math.pi <= t < 1.5 * math.pi:
        return 1.0 / math.pi
    return 0.0


def _f2(theta: float) -> float:
    # cos(2 theta)/2 where it is nonnegative around angles 0 and pi
    t = (theta + 0.25 * math.pi) % TWO_PI - 0.25 * math.pi
    if -0.25 * math.pi <= t < 0.25 * math.pi or 0.75 * math.pi <= t < 1.25 * math.pi:
        return 0.5 * math.cos(2.0 * t)
    return 0.0


def _f3(theta: float) -> float:
    return 0.25 * abs(math.cos(2.0 * theta))


def _funiform(theta: float) -> float:
    return 1.0 / TWO_PI


_QUARTERS = (0.5 * math.pi, math.pi, 1.5 * math.pi)
_DIAGONALS = (0.25 * math.pi, 0.75 * math.pi, 1.25 * math.pi, 1.75 * math.pi)

BUILTIN_DENSITIES: dict[str, tuple[Callable[[float], float], tuple[float, ...]]] = {
    "f1": (_f1, _QUARTERS),
    "f2": (_f2, _DIAGONALS),
    "f3": (_f3, _DIAGONALS),
    "uniform": (_funiform, ()),
}


# ----------------------------------------------------------------- variants

@dataclass(frozen=True)
class Atoms:
    points: np.ndarray  # (m, d), rows on the unit sphere
    weights: np.ndarray  # (m,), strictly positive


@dataclass(frozen=True)
class UniformLInf:
    pass


@dataclass(frozen=True)
class AngularDensity:
    density: Callable[[float], float]  # integrates to total_mass over [0, 2pi)
    name: str
    breakpoints: tuple[float, ...]
    theta_edges: np.ndarray = field(repr=False)  # (bins+1,)
    cum: np.ndarray = field(repr=False)  # (bins+1,), cum[0]=0, cum[-1]=mass


def _angular_table(density, breakpoints, bins=ANGULAR_TABLE_BINS):
    edges = np.linspace(0.0, TWO_PI, bins + 1)
    masses = np.empty(bins)
    for i in range(bins):
        a, b = edges[i], edges[i + 1]
        m = 0.5 * (a + b)
        # builtin breakpoints fall on table edges, so Simpson per bin is exact
        # enough; smooth within each bin
        masses[i] = (b - a) / 6.0 * (density(a) + 4.0 * density(m) + density(b))
    cum = np.concatenate([[0.0], np.cumsum(masses)])
    return edges, cum


# ------------------------------------------------------------------ measure

@dataclass(frozen=True)
class SpectralMeasure:
    """A finite measure sigma on the declared unit sphere."""

    sphere: Sphere
    dim: int
    variant: Atoms | UniformLInf | AngularDensity
    total_mass: float

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not (self.total_mass > 0.0):
            raise ValueError("total_mass must be positive")
        v = self.variant
        if isinstance(v, Atoms):
            pts = np.asarray(v.points, dtype=float)
            w = np.asarray(v.weights, dtype=float)
            if pts.ndim != 2 or pts.shape[1] != self.dim or pts.shape[0] == 0:
                raise ValueError("atom points must form a nonempty (m, dim) array")
            if w.shape != (pts.shape[0],):
                raise ValueError("one weight per atom required")
            if np.any(w <= 0.0):
                raise ValueError("atom weights must be positive")
            norms = sphere_norm(self.sphere, pts)
            if np.any(np.abs(norms - 1.0) > ATOL_SPHERE):
                raise ValueError("atoms must lie on the declared unit sphere")
            if abs(w.sum() - self.total_mass) > ATOL_WEIGHTS * max(1.0, self.total_mass):
                raise ValueError("atom weights must sum to total_mass")
            if self.sphere is Sphere.LINF and (np.any(pts < 0.0) or np.any(pts > 1.0)):
                raise ValueError("max-cone atoms must have coordinates in [0, 1]")
            pts.setflags(write=False)
            w.setflags(write=False)
            object.__setattr__(self, "variant", Atoms(pts, w))
        elif isinstance(v, UniformLInf):
            if self.sphere is not Sphere.LINF:
                raise ValueError("UniformLInf requires the L-infinity sphere")
        elif isinstance(v, AngularDensity):
            if self.sphere is not Sphere.EUCLIDEAN or self.dim != 2:
                raise ValueError("angular densities live on the Euclidean circle (d=2)")
            mass = integrate(v.density, 0.0, TWO_PI, tol=ATOL_DENSITY_MASS / 8, breakpoints=v.breakpoints)
            if abs(mass - self.total_mass) > ATOL_DENSITY_MASS * max(1.0, self.total_mass):
                raise ValueError("angular density must integrate to total_mass")
        else:
            raise TypeError(f"unknown variant {type(v).__name__}")

    # ------------------------------------------------------------- factories

    @classmethod
    def from_atoms(cls, points, weights, sphere: Sphere | str = Sphere.LINF) -> "SpectralMeasure":
        sphere = Sphere(sphere)
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        w = np.asarray(weights, dtype=float)
        return cls(sphere, pts.shape[1], Atoms(pts, w), float(w.sum()))

    @classmethod
    def uniform_linf(cls, dim: int = 2, total_mass: float = 1.0) -> "SpectralMeasure":
        return cls(Sphere.LINF, dim, UniformLInf(), float(total_mass))

    @classmethod
    def angular(cls, name: str, total_mass: float = 1.0) -> "SpectralMeasure":
        if name not in BUILTIN_DENSITIES:
            raise ValueError(f"unknown builtin density {name!r}")
        base, breakpoints = BUILTIN_DENSITIES[name]
        tm = float(total_mass)
        dens = (lambda th, _b=base, _c=tm: _c * _b(th))
        edges, cum = _angular_table(dens, breakpoints)
        return cls(Sphere.EUCLIDEAN, 2, AngularDensity(dens, name, breakpoints, edges, cum), tm)

    def scaled(self, factor: float) -> "SpectralMeasure":
        """The measure ``factor * sigma`` (same support, scaled mass)."""
        if not (factor > 0.0):
            raise ValueError("scale factor must be positive")
        v = self.variant
        if isinstance(v, Atoms):
            return SpectralMeasure.from_atoms(v.points, v.weights * factor, self.sphere)
        if isinstance(v, UniformLInf):
            return SpectralMeasure.uniform_linf(self.dim, self.total_mass * factor)
        dens = (lambda th, _f=v.density, _c=factor: _c * _f(th))
        edges = v.theta_edges
        return SpectralMeasure(
            self.sphere,
            2,
            AngularDensity(dens, v.name, v.breakpoints, edges, v.cum * factor),
            self.total_mass * factor,
        )


# ------------------------------------------------------------ sphere subsets

@dataclass(frozen=True)
class SphereSubset:
    """A measurable subset of the unit sphere, in one of four shapes.

    ``atoms``          -- a set of atom indices of an atomic measure;
    ``face_segment``   -- a closed segment of one face of the d=2 L-inf
                          sphere, e.g. all points (1, u) with lo <= u <= hi;
    ``angle_interval`` -- the arc [lo, hi) of the Euclidean circle;
    ``empty``          -- the empty set.
    """

    kind: str
    indices: tuple[int, ...] = ()
    face: int = 0
    lo: float = 0.0
    hi: float = 0.0

    @classmethod
    def empty(cls) -> "SphereSubset":
        return cls("empty")

    @classmethod
    def atom_indices(cls, indices) -> "SphereSubset":
        return cls("atoms", indices=tuple(int(i) for i in indices))

    @classmethod
    def face_segment(cls, face: int, lo: float, hi: float) -> "SphereSubset":
        if not 0.0 <= lo <= hi <= 1.0:
            raise ValueError("face segment needs 0 <= lo <= hi <= 1")
        return cls("face_segment", face=int(face), lo=float(lo), hi=float(hi))

    @classmethod
    def angle_interval(cls, lo: float, hi: float) -> "SphereSubset":
        if hi < lo:
            raise ValueError("angle interval needs lo <= hi")
        return cls("angle_interval", lo=float(lo), hi=float(hi))


def measure_of(measure: SpectralMeasure, subset: SphereSubset) -> float:
    """sigma(B): exact for atoms, quadrature for the continuous variants."""
    v = measure.variant
    if subset.kind == "empty":
        return 0.0
    if subset.kind == "atoms":
        if not isinstance(v, Atoms):
            raise ValueError("atom-index subsets need an atomic measure")
        if subset.indices and (min(subset.indices) < 0 or max(subset.indices) >= len(v.weights)):
            raise ValueError("atom index out of range")
        return float(v.weights[list(subset.indices)].sum()) if subset.indices else 0.0
    if subset.kind == "face_segment":
        if measure.sphere is not Sphere.LINF or measure.dim != 2:
            raise ValueError("face segments apply to d=2 max-cone measures")
        if subset.face not in (0, 1):
            raise ValueError("face must be 0 or 1 for d=2")
        if isinstance(v, Atoms):
            other = 1 - subset.face
            on_face = np.abs(v.points[:, subset.face] - 1.0) <= 1e-9
            inside = (v.points[:, other] >= subset.lo - 1e-9) & (v.points[:, other] <= subset.hi + 1e-9)
            return float(v.weights[on_face & inside].sum())
        if isinstance(v, UniformLInf):
            return measure.total_mass / measure.dim * (subset.hi - subset.lo)
        raise ValueError("face segments are incompatible with angular densities")
    if subset.kind == "angle_interval":
        if measure.sphere is not Sphere.EUCLIDEAN or measure.dim != 2:
            raise ValueError("angle intervals apply to measures on the circle")
        if isinstance(v, Atoms):
            ang = np.mod(np.arctan2(v.points[:, 1], v.points[:, 0]), TWO_PI)
            inside = (ang >= subset.lo) & (ang < subset.hi)
            return float(v.weights[inside].sum())
        if isinstance(v, AngularDensity):
            return float(
                integrate(v.density, subset.lo, subset.hi, tol=QUAD_TOL, breakpoints=v.breakpoints)
            )
        raise ValueError("angle intervals are incompatible with this measure")
    raise ValueError(f"unknown subset kind {subset.kind!r}")


def contains_directions(subset: SphereSubset, dirs: np.ndarray, measure: SpectralMeasure | None = None) -> np.ndarray:
    """Vectorized membership of unit directions in the subset."""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    n = dirs.shape[0]
    if subset.kind == "empty":
        return np.zeros(n, dtype=bool)
    if subset.kind == "face_segment":
        other = 1 - subset.face
        pinned = dirs[:, subset.face] >= 1.0 - 1e-9
        return pinned & (dirs[:, other] >= subset.lo) & (dirs[:, other] <= subset.hi)
    if subset.kind == "angle_interval":
        ang = np.mod(np.arctan2(dirs[:, 1], dirs[:, 0]), TWO_PI)
        return (ang >= subset.lo) & (ang < subset.hi)
    if subset.kind == "atoms":
        if measure is None or not isinstance(measure.variant, Atoms):
            raise ValueError("atom-index membership needs the atomic measure")
        pts = measure.variant.points[list(subset.indices)]
        if len(subset.indices) == 0:
            return np.zeros(n, dtype=bool)
        close = np.abs(dirs[:, None, :] - pts[None, :, :]).max(axis=2) <= 1e-9
        return close.any(axis=1)
    raise ValueError(f"unknown subset kind {subset.kind!r}")


# --------------------------------------------------------------- operations

def sample_direction(measure: SpectralMeasure, rng: np.random.Generator) -> np.ndarray:
    """One draw from the normalized measure sigma/sigma(S)."""
    return sample_directions(measure, rng, 1)[0]


def sample_directions(measure: SpectralMeasure, rng: np.random.Generator, n: int) -> np.ndarray:
    """n i.i.d. draws from sigma/sigma(S), as an (n, d) array."""
    v = measure.variant
    d = measure.dim
    if isinstance(v, Atoms):
        cum = np.cumsum(v.weights)
        cum /= cum[-1]
        idx = np.minimum(np.searchsorted(cum, rng.random(n), side="right"), len(cum) - 1)
        return v.points[idx].copy()
    if isinstance(v, UniformLInf):
        face = np.minimum((rng.random(n) * d).astype(np.int64), d - 1)
        out = rng.random((n, d))
        out[np.arange(n), face] = 1.0
        return out
    cum = v.cum / v.cum[-1]
    u = rng.random(n)
    pos = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(cum) - 2)
    span = cum[pos + 1] - cum[pos]
    frac = np.where(span > 0.0, (u - cum[pos]) / np.where(span > 0.0, span, 1.0), 0.0)
    theta = v.theta_edges[pos] + frac * (v.theta_edges[pos + 1] - v.theta_edges[pos])
    return np.column_stack([np.cos(theta), np.sin(theta)])


def marginal_alpha_moment(measure: SpectralMeasure, j: int, alpha: float) -> float:
    """The integral of (s_j)^alpha against sigma, the j-th Frechet scale."""
    if not (alpha > 0.0):
        raise ValueError("alpha must be positive")
    if not 0 <= j < measure.dim:
        raise ValueError("coordinate index out of range")
    v = measure.variant
    if isinstance(v, Atoms):
        if np.any(v.points < -ATOL_SPHERE):
            raise ValueError("measure has negative support coordinates")
        coords = np.clip(v.points[:, j], 0.0, None)
        return float(np.sum(v.weights * coords**alpha))
    if isinstance(v, UniformLInf):
        d = measure.dim
        body = integrate(lambda t: t**alpha, 0.0, 1.0, tol=QUAD_TOL)
        return measure.total_mass * (1.0 / d + (d - 1) / d * body)
    grid = 0.5 * (v.theta_edges[:-1] + v.theta_edges[1:])
    coords = np.cos(grid) if j == 0 else np.sin(grid)
    dens = np.array([v.density(t) for t in grid])
    if np.any((dens > 0.0) & (coords < -1e-9)):
        raise ValueError("measure has negative support coordinates")

    def f(th):
        c = math.cos(th) if j == 0 else math.sin(th)
        return v.density(th) * max(c, 0.0) ** alpha

    return float(integrate(f, 0.0, TWO_PI, tol=QUAD_TOL, breakpoints=v.breakpoints))


def first_moment(measure: SpectralMeasure, k: int) -> float:
    """The integral of s_k against sigma (signed)."""
    v = measure.variant
    if isinstance(v, Atoms):
        return float(np.sum(v.weights * v.points[:, k]))
    if isinstance(v, AngularDensity):
        trig = math.cos if k == 0 else math.sin
        return float(
            integrate(lambda th: v.density(th) * trig(th), 0.0, TWO_PI, tol=QUAD_TOL, breakpoints=v.breakpoints)
        )
    d = measure.dim
    body = integrate(lambda t: t, 0.0, 1.0, tol=QUAD_TOL)
    return measure.total_mass * (1.0 / d + (d - 1) / d * body)


def check_strict_stability(measure: SpectralMeasure, alpha: float, delta) -> bool:
    """Whether (alpha, sigma, delta) defines a strictly stable law."""
    if measure.sphere is not Sphere.EUCLIDEAN:
        raise ValueError("strict-stability check applies to additive-cone measures")
    delta = np.atleast_1d(np.asarray(delta, dtype=float))
    if alpha != 1.0:
        return bool(np.all(delta == 0.0))
    return all(abs(first_moment(measure, k)) <= 1e-10 for k in range(measure.dim))


def check_symmetry(measure: SpectralMeasure) -> bool:
    """Whether sigma is invariant under point negation."""
    v = measure.variant
    if isinstance(v, UniformLInf):
        return False
    if isinstance(v, Atoms):
        pts, w = v.points, v.weights
        used = np.zeros(len(w), dtype=bool)
        for i in range(len(w)):
            if used[i]:
                continue
            match = -1
            for k in range(len(w)):
                if not used[k] and k != i and np.all(np.abs(pts[k] + pts[i]) <= ATOL_SPHERE):
                    match = k
                    break
            if match < 0 or abs(w[match] - w[i]) > ATOL_WEIGHTS:
                return False
            used[i] = used[match] = True
        return True
    grid = np.linspace(0.0, math.pi, ANGULAR_TABLE_BINS, endpoint=False)
    for th in grid:
        if abs(v.density(th) - v.density(th + math.pi)) > 1e-9:
            return False
    return True


# --------------------------------------------------------------------- JSON

def measure_to_json(measure: SpectralMeasure) -> dict:
    v = measure.variant
    if isinstance(v, Atoms):
        variant = {
            "atoms": [
                {"point": [float(c) for c in p], "weight": float(w)}
                for p, w in zip(v.points, v.weights)
            ]
        }
    elif isinstance(v, UniformLInf):
        variant = {"uniform_linf": {}}
    else:
        variant = {"angular_density": v.name}
    return {
        "sphere": measure.sphere.value,
        "dim": measure.dim,
        "variant": variant,
        "total_mass": measure.total_mass,
    }


def measure_from_json(spec: dict) -> SpectralMeasure:
    sphere = Sphere(spec["sphere"])
    dim = int(spec["dim"])
    variant = spec["variant"]
    total_mass = float(spec.get("total_mass", 1.0))
    if "atoms" in variant:
        pts = [a["point"] for a in variant["atoms"]]
        w = [a["weight"] for a in variant["atoms"]]
        m = SpectralMeasure.from_atoms(pts, w, sphere)
        if m.dim != dim:
            raise ValueError("atom dimension disagrees with dim")
        if abs(m.total_mass - total_mass) > ATOL_WEIGHTS * max(1.0, total_mass):
            raise ValueError("total_mass disagrees with the sum of atom weights")
        return m
    if "uniform_linf" in variant:
        if sphere is not Sphere.LINF:
            raise ValueError("uniform_linf requires sphere == linf")
        return SpectralMeasure.uniform_linf(dim, total_mass)
    if "angular_density" in variant:
        if sphere is not Sphere.EUCLIDEAN or dim != 2:
            raise ValueError("angular_density requires sphere == euclid and dim == 2")
        return SpectralMeasure.angular(variant["angular_density"], total_mass)
    raise ValueError("unknown measure variant")
