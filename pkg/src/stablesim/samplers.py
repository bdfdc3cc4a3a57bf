"""Samplers for strictly max-stable and strictly alpha-stable random vectors.

All samplers realize the series representation over Poisson arrivals: draws
are built from radii Gamma_k^(-1/alpha) and i.i.d. directions from the
normalized spectral measure.  Max-stable draws are exact (adaptive stopping);
stable draws are k-term partial sums; domain-of-attraction draws are
normalized sums of i.i.d. Pareto-radius vectors.

Batch generation is chunked: each fixed-size row chunk gets its own substream
spawned from the seed, so batch content is identical for any worker count.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .arrivals import ArrivalStream
from .spectral import (
    Atoms,
    AngularDensity,
    SpectralMeasure,
    Sphere,
    UniformLInf,
    check_symmetry,
    measure_to_json,
    sample_direction,
)

CHUNK = 8192
DEFAULT_MAX_TERMS = 1_000_000
DEFAULT_K_SYMMETRIC = 50
DEFAULT_K_SKEWED = 1000


class DegenerateMarginal(ValueError):
    """Some marginal scale constant is zero, so that coordinate is stuck at 0."""


class TruncationExceeded(RuntimeError):
    """Adaptive stopping was not reached within the term cap."""


class UnsupportedRegime(ValueError):
    """The series does not represent the law (alpha >= 1 and non-symmetric)."""


# --------------------------------------------------------------------- laws

@dataclass(frozen=True)
class MaxStableLaw:
    """Strictly max-stable law with index alpha and max-cone spectral measure."""

    alpha: float
    measure: SpectralMeasure

    def __post_init__(self):
        if not (self.alpha > 0.0):
            raise ValueError("alpha must be positive")
        if self.measure.sphere is not Sphere.LINF:
            raise ValueError("max-stable laws need a measure on the L-inf sphere")

    @property
    def dim(self) -> int:
        return self.measure.dim

    def describe(self) -> dict:
        return {"kind": "max_stable", "alpha": self.alpha, "measure": measure_to_json(self.measure)}


@dataclass(frozen=True)
class StableLaw:
    """Alpha-stable law (additive cone) with spectral measure and shift."""

    alpha: float
    measure: SpectralMeasure
    delta: np.ndarray = None

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0):
            raise ValueError("alpha must lie in (0, 2)")
        if self.measure.sphere is not Sphere.EUCLIDEAN:
            raise ValueError("stable laws need a measure on the Euclidean sphere")
        delta = np.zeros(self.measure.dim) if self.delta is None else np.asarray(self.delta, float)
        if delta.shape != (self.measure.dim,):
            raise ValueError("delta must be a d-vector")
        delta = delta.copy()
        delta.setflags(write=False)
        object.__setattr__(self, "delta", delta)

    @property
    def dim(self) -> int:
        return self.measure.dim

    def series_valid(self) -> bool:
        return self.alpha < 1.0 or check_symmetry(self.measure)

    def default_k(self) -> int:
        # symmetric laws converge fast; skewed alpha < 1 needs many more terms
        return DEFAULT_K_SYMMETRIC if check_symmetry(self.measure) else DEFAULT_K_SKEWED

    def describe(self) -> dict:
        return {
            "kind": "stable",
            "alpha": self.alpha,
            "measure": measure_to_json(self.measure),
            "delta": [float(v) for v in self.delta],
        }


@dataclass
class SampleBatch:
    data: np.ndarray  # (n, d)
    meta: dict
    diagnostics: dict | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.data.shape[0]


def marginal_scales(law: MaxStableLaw) -> np.ndarray:
    from .spectral import marginal_alpha_moment

    return np.array([marginal_alpha_moment(law.measure, j, law.alpha) for j in range(law.dim)])


def _require_nondegenerate(law: MaxStableLaw) -> None:
    v = law.measure.variant
    if isinstance(v, Atoms):
        dead = [j for j in range(law.dim) if not np.any(v.points[:, j] > 0.0)]
        if dead:
            raise DegenerateMarginal(f"marginal scale constant is zero for coordinates {dead}")


# ------------------------------------------------------------- single draws

def _max_from_streams(
    gammas: Iterator[float],
    directions: Iterator[np.ndarray],
    alpha: float,
    d: int,
    max_terms: int,
) -> tuple[np.ndarray, int, int]:
    """Reference implementation of the adaptive-stopping maximum.

    Consumes arrivals until the next radius cannot exceed the smallest
    coordinate of the running maximum; returns (draw, terms used,
    index of the last term that changed the maximum).
    """
    m = np.zeros(d)
    inv = 1.0 / alpha
    i = 0
    minm = 0.0
    last_change = 0
    for gamma in gammas:
        r = gamma**-inv
        if i >= 1 and r <= minm:
            return m, i, last_change
        if i >= max_terms:
            raise TruncationExceeded(f"no stopping within {max_terms} terms")
        contrib = r * next(directions)
        i += 1
        if np.any(contrib > m):
            np.maximum(m, contrib, out=m)
            last_change = i
        minm = m.min()
    raise RuntimeError("arrival stream exhausted")


def _rng_streams(law_measure: SpectralMeasure, rng: np.random.Generator):
    gammas = iter(ArrivalStream(rng))
    directions = (sample_direction(law_measure, rng) for _ in itertools.count())
    return gammas, directions


def sample_max_stable(law: MaxStableLaw, rng: np.random.Generator, max_terms: int = DEFAULT_MAX_TERMS) -> np.ndarray:
    """One exact draw of the max-stable law.

    The series over the normalized measure is scaled by sigma(S)^(1/alpha),
    which carries the total mass (the stopping rule is scale-invariant).
    """
    _require_nondegenerate(law)
    gammas, directions = _rng_streams(law.measure, rng)
    vec, _, _ = _max_from_streams(gammas, directions, law.alpha, law.dim, max_terms)
    return law.measure.total_mass ** (1.0 / law.alpha) * vec


def sample_max_stable_fixed_k(law: MaxStableLaw, rng: np.random.Generator, k: int) -> np.ndarray:
    """The k-term partial maximum (approximate draw)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    gammas, directions = _rng_streams(law.measure, rng)
    m = np.zeros(law.dim)
    inv = 1.0 / law.alpha
    for _ in range(k):
        r = next(gammas) ** -inv
        np.maximum(m, r * next(directions), out=m)
    return law.measure.total_mass ** (1.0 / law.alpha) * m


def sample_stable(law: StableLaw, rng: np.random.Generator, k: int | None = None) -> np.ndarray:
    """A k-term partial sum of the series, scaled by sigma(S)^(1/alpha)."""
    if not law.series_valid():
        raise UnsupportedRegime("series sampling needs alpha < 1 or a symmetric measure")
    if k is None:
        k = law.default_k()
    if k < 1:
        raise ValueError("k must be >= 1")
    c = law.measure.total_mass ** (1.0 / law.alpha)
    gammas, directions = _rng_streams(law.measure, rng)
    acc = np.zeros(law.dim)
    inv = 1.0 / law.alpha
    for _ in range(k):
        acc += next(gammas) ** -inv * next(directions)
    return c * acc + law.delta


def sample_doa_sum(alpha: float, measure: SpectralMeasure, n: int, rng: np.random.Generator) -> np.ndarray:
    """(X_1 + ... + X_n) / b_n for X = R * eps, R Pareto(alpha), eps ~ sigma-tilde.

    b_n = (n / sigma(S))^(1/alpha); the summand tail satisfies
    n P{X/|X| in B, |X| > r b_n} = sigma(B) r^(-alpha) exactly for r b_n >= 1.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be >= 1")
    inv = 1.0 / alpha
    acc = np.zeros(measure.dim)
    for _ in range(n):
        r = (1.0 - rng.random()) ** -inv
        acc += r * sample_direction(measure, rng)
    return acc / (n / measure.total_mass) ** inv


# ------------------------------------------------------------------ batches

def _chunk_rngs(seed, nchunks: int):
    if isinstance(seed, (int, np.integer)):
        streams = [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(int(seed)).spawn(nchunks)]
        return int(seed), streams
    if isinstance(seed, np.random.Generator):
        return None, seed.spawn(nchunks)
    raise TypeError("seed must be an int or a numpy Generator")


def _run_chunks(fn, n: int, seed, threads: int):
    """Split n rows into fixed chunks, each with its own substream."""
    nchunks = max(1, math.ceil(n / CHUNK))
    seed_label, streams = _chunk_rngs(seed, nchunks)
    jobs = []
    start = 0
    for i in range(nchunks):
        size = min(CHUNK, n - start)
        jobs.append((start, size, streams[i]))
        start += size
    if threads <= 1:
        results = [fn(rng, size) for _, size, rng in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: fn(j[2], j[1]), jobs))
    return seed_label, jobs, results


def sample_batch(law, seed, n: int, mode=None, threads: int = 1, max_terms: int = DEFAULT_MAX_TERMS) -> SampleBatch:
    """n independent draws of the law; content depends on the seed only.

    ``mode`` is "exact" (max-stable default) or an integer term count; stable
    laws default to 50 terms when symmetric and 1000 otherwise.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    table = kernels.direction_table(law.measure)
    d = law.dim
    if isinstance(law, MaxStableLaw):
        mode = "exact" if mode is None else mode
        if mode == "exact":
            _require_nondegenerate(law)

            def fn(rng, size):
                return kernels.max_stable_exact(rng, size, d, law.alpha, table, max_terms)

            seed_label, jobs, results = _run_chunks(fn, n, seed, threads)
            data = np.vstack([r[0] for r in results]) if results else np.zeros((0, d))
            nterms = np.concatenate([r[1] for r in results])
            last_change = np.concatenate([r[2] for r in results])
            bad = int(np.sum(nterms < 0))
            if bad:
                raise TruncationExceeded(f"{bad} of {n} draws did not stop within {max_terms} terms")
            diag = {"terms": nterms, "last_change": last_change}
        else:
            k = int(mode)
            if k < 1:
                raise ValueError("truncation must be >= 1")

            def fn(rng, size):
                return kernels.max_stable_fixed_k(rng, size, d, law.alpha, table, k)

            seed_label, jobs, results = _run_chunks(fn, n, seed, threads)
            data = np.vstack(results) if results else np.zeros((0, d))
            diag = None
        meta = {"seed": seed_label, "law": law.describe(), "truncation": mode, "n": n}
        return SampleBatch(data, meta, diag)
    if isinstance(law, StableLaw):
        if not law.series_valid():
            raise UnsupportedRegime("series sampling needs alpha < 1 or a symmetric measure")
        k = law.default_k() if mode in (None, "default") else int(mode)
        if k < 1:
            raise ValueError("truncation must be >= 1")
        c = law.measure.total_mass ** (1.0 / law.alpha)

        def fn(rng, size):
            return kernels.stable_sum(rng, size, d, law.alpha, table, k, c)

        seed_label, jobs, results = _run_chunks(fn, n, seed, threads)
        data = np.vstack(results) if results else np.zeros((0, d))
        data = data + law.delta
        meta = {"seed": seed_label, "law": law.describe(), "truncation": k, "n": n}
        return SampleBatch(data, meta, None)
    raise TypeError(f"unknown law type {type(law).__name__}")


def sample_doa_batch(
    alpha: float,
    measure: SpectralMeasure,
    n_summands: int,
    n: int,
    seed,
    threads: int = 1,
) -> SampleBatch:
    """n draws of the normalized Pareto sum with n_summands terms each."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if n_summands < 1:
        raise ValueError("n_summands must be >= 1")
    table = kernels.direction_table(measure)
    d = measure.dim
    inv_bn = (n_summands / measure.total_mass) ** (-1.0 / alpha)

    def fn(rng, size):
        return kernels.doa_sum(rng, size, d, alpha, table, n_summands, inv_bn)

    seed_label, jobs, results = _run_chunks(fn, n, seed, threads)
    data = np.vstack(results) if results else np.zeros((0, d))
    meta = {
        "seed": seed_label,
        "law": {"kind": "doa", "alpha": alpha, "measure": measure_to_json(measure), "n_summands": n_summands},
        "truncation": n_summands,
        "n": n,
    }
    return SampleBatch(data, meta, None)


def tau_first_hit_batch(law: MaxStableLaw, j: int, n: int, rng: np.random.Generator, cap: int = 1_000_000) -> np.ndarray:
    """First index at which the direction stream pins coordinate j to 1.

    Instruments the direction sampling actually used by the series samplers.
    """
    if not isinstance(law.measure.variant, Atoms):
        raise ValueError("first-hit instrumentation needs an atomic measure")
    pts, w = law.measure.variant.points, law.measure.variant.weights
    p_j = float(w[np.abs(pts[:, j] - 1.0) <= 1e-12].sum()) / law.measure.total_mass
    if not (p_j > 0.0):
        raise ValueError("coordinate hit probability must be positive")
    table = kernels.direction_table(law.measure)
    return kernels.first_hit_index(rng, n, law.dim, table, j, cap)
