"""Poisson arrival times and the radial map driving every series sampler.

The radial engine is the sequence Gamma_1 < Gamma_2 < ... of cumulative sums
of standard exponentials; the points Gamma_k^(-1/alpha) then realize a Poisson
process on (0, inf) whose intensity of (r, inf) is r^(-alpha).

Project RNG contract: `numpy.random.Generator` over PCG64, seeded explicitly;
independent substreams come from `SeedSequence`/`Generator.spawn`.
Exponential draws use the inverse CDF `-log1p(-U)` with U uniform on [0, 1),
i.e. -ln(V) with V = 1 - U uniform on (0, 1], so log(0) never occurs and the
draw sequence is reproducible bit-for-bit for a given seed.
"""

from __future__ import annotations

import math

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def spawn_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """n independent substream generators derived from one master seed."""
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(n)]


def standard_exponential(rng: np.random.Generator) -> float:
    return -math.log1p(-rng.random())


class ArrivalStream:
    """Stateful generator of the increasing arrival times Gamma_k."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.last_gamma = 0.0
        self.count = 0

    def next_gamma(self) -> float:
        """Advance to Gamma_{count+1} = Gamma_count + Exp(1)."""
        self.last_gamma += standard_exponential(self.rng)
        self.count += 1
        return self.last_gamma

    def __iter__(self):
        while True:
            yield self.next_gamma()


def next_gamma(stream: ArrivalStream) -> float:
    return stream.next_gamma()


def radius(gamma: float, alpha: float) -> float:
    """gamma^(-1/alpha), the radial position of the arrival."""
    if not (gamma > 0.0):
        raise ValueError("gamma must be positive")
    if not (alpha > 0.0):
        raise ValueError("alpha must be positive")
    return gamma ** (-1.0 / alpha)
