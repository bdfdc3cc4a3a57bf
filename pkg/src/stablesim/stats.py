"""Empirical validation machinery: ECDF, KS distances, empirical
characteristic function, tail-measure estimation, first-hit-law check, and
2-D histogram grids with a plain-text serialization."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaincc

from .samplers import MaxStableLaw, SampleBatch, tau_first_hit_batch
from .spectral import SphereSubset, Sphere, contains_directions, sphere_norm

TAIL_MIN_EXCEEDANCES = 30
TAU_CELLS = 20


def _data(batch) -> np.ndarray:
    return batch.data if isinstance(batch, SampleBatch) else np.asarray(batch, dtype=float)


# ----------------------------------------------------------------- ECDF / KS

def ecdf_eval(sample, x):
    """Fraction of the sample <= x (x scalar or array)."""
    s = np.sort(np.asarray(sample, dtype=float))
    if s.size == 0:
        raise ValueError("sample must be nonempty")
    return np.searchsorted(s, x, side="right") / s.size


def ks_one_sample(sample, cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """sup |ECDF - F| evaluated at the sample points (both one-sided gaps)."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("sample must be nonempty")
    f = np.asarray(cdf(x), dtype=float)
    upper = np.max(np.arange(1, n + 1) / n - f)
    lower = np.max(f - np.arange(0, n) / n)
    return float(max(upper, lower))


def ks_two_sample(a, b) -> float:
    """Standard two-sample sup-distance between ECDFs."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("samples must be nonempty")
    grid = np.concatenate([a, b])
    ca = np.searchsorted(a, grid, side="right") / a.size
    cb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(ca - cb)))


# ----------------------------------------------------------------------- ECF

def ecf_eval(batch, t) -> complex:
    """(1/n) sum of exp(i <t, X_row>)."""
    X = np.atleast_2d(_data(batch))
    t = np.asarray(t, dtype=float)
    if X.shape[0] == 0:
        raise ValueError("batch must be nonempty")
    return complex(np.mean(np.exp(1j * (X @ t))))


# ------------------------------------------------------------ tail estimator

@dataclass(frozen=True)
class TailEstimate:
    value: float  # n * frequency of {direction in B, norm > r b_n}
    exceedances: int  # count of points feeding the estimate
    reliable: bool  # at least TAIL_MIN_EXCEEDANCES exceedances
    b_n: float


def tail_measure_estimate(
    batch,
    subset: SphereSubset,
    r: float,
    alpha: float,
    sigma_total: float = 1.0,
    sphere: Sphere | None = None,
    measure=None,
) -> TailEstimate:
    """Estimate of n P{X/|X| in B, |X| > r b_n} with b_n = (n/sigma(S))^(1/alpha).

    The sphere norm defaults to L-inf for face segments and Euclidean for
    angle intervals; the target value is sigma(B) r^-alpha.
    """
    X = np.atleast_2d(_data(batch))
    n = X.shape[0]
    if n == 0:
        raise ValueError("batch must be nonempty")
    if sphere is None:
        sphere = Sphere.LINF if subset.kind == "face_segment" else Sphere.EUCLIDEAN
    b_n = (n / sigma_total) ** (1.0 / alpha)
    norms = sphere_norm(sphere, X)
    mask = norms > r * b_n
    count = 0
    if np.any(mask):
        dirs = X[mask] / norms[mask, None]
        count = int(np.count_nonzero(contains_directions(subset, dirs, measure)))
    return TailEstimate(float(count), count, count >= TAIL_MIN_EXCEEDANCES, b_n)


# ------------------------------------------------------------ first-hit law

@dataclass(frozen=True)
class TauLawCheck:
    counts: np.ndarray  # observed counts over cells {1..20, >20}
    expected: np.ndarray
    statistic: float
    p_value: float
    p_hit: float


def tau_law_check(law: MaxStableLaw, j: int, n_draws: int, rng: np.random.Generator) -> TauLawCheck:
    """Chi-square check that the first-hit index of coordinate j is geometric."""
    from .spectral import Atoms

    v = law.measure.variant
    if not isinstance(v, Atoms):
        raise ValueError("first-hit law check needs an atomic measure")
    p = float(v.weights[np.abs(v.points[:, j] - 1.0) <= 1e-12].sum()) / law.measure.total_mass
    if not (p > 0.0):
        raise ValueError("coordinate hit probability must be positive")
    tau = tau_first_hit_batch(law, j, n_draws, rng)
    counts = np.zeros(TAU_CELLS + 1)
    for c in range(1, TAU_CELLS + 1):
        counts[c - 1] = np.count_nonzero(tau == c)
    counts[TAU_CELLS] = np.count_nonzero(tau > TAU_CELLS)
    cells = np.arange(1, TAU_CELLS + 1)
    expected = np.concatenate([n_draws * (1.0 - p) ** (cells - 1) * p, [n_draws * (1.0 - p) ** TAU_CELLS]])
    live = expected > 0.0
    if np.any(~live & (counts > 0)):
        return TauLawCheck(counts, expected, math.inf, 0.0, p)
    stat = float(np.sum((counts[live] - expected[live]) ** 2 / expected[live]))
    dof = int(np.count_nonzero(live)) - 1
    pval = 1.0 if dof == 0 and stat == 0.0 else float(gammaincc(dof / 2.0, stat / 2.0))
    return TauLawCheck(counts, expected, stat, pval, p)


# ------------------------------------------------------------- histogram grid

@dataclass
class HistogramGrid:
    x_edges: np.ndarray
    y_edges: np.ndarray
    counts: np.ndarray  # (nx, ny); densities when normalization == "density"
    n_total: int
    normalization: str  # "counts" | "density"

    def to_text(self) -> str:
        lines = [
            "# xedges: " + " ".join(repr(float(v)) for v in self.x_edges),
            "# yedges: " + " ".join(repr(float(v)) for v in self.y_edges),
            f"# n: {self.n_total}",
        ]
        for row in self.counts:
            lines.append(" ".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "HistogramGrid":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) < 3 or not lines[0].startswith("# xedges:") or not lines[1].startswith("# yedges:"):
            raise ValueError("not a histogram grid file")
        xe = np.array([float(v) for v in lines[0].split(":", 1)[1].split()])
        ye = np.array([float(v) for v in lines[1].split(":", 1)[1].split()])
        n = int(lines[2].split(":", 1)[1])
        counts = np.array([[float(v) for v in ln.split()] for ln in lines[3:]])
        norm = "counts" if np.allclose(counts, np.round(counts)) and counts.sum() <= n else "density"
        return cls(xe, ye, counts, n, norm)


def histogram2d(batch, x_edges, y_edges, normalization: str = "counts") -> HistogramGrid:
    """Bin the first two coordinates; out-of-range points count in n_total only."""
    if normalization not in ("counts", "density"):
        raise ValueError("normalization must be 'counts' or 'density'")
    X = np.atleast_2d(_data(batch))
    x_edges = np.asarray(x_edges, dtype=float)
    y_edges = np.asarray(y_edges, dtype=float)
    if np.any(np.diff(x_edges) <= 0.0) or np.any(np.diff(y_edges) <= 0.0):
        raise ValueError("bin edges must be strictly increasing")
    n_total = X.shape[0]
    if n_total:
        counts, _, _ = np.histogram2d(X[:, 0], X[:, 1], bins=[x_edges, y_edges])
    else:
        counts = np.zeros((len(x_edges) - 1, len(y_edges) - 1))
    if normalization == "density":
        area = np.outer(np.diff(x_edges), np.diff(y_edges))
        counts = counts / (max(n_total, 1) * area)
    return HistogramGrid(x_edges, y_edges, counts, n_total, normalization)
