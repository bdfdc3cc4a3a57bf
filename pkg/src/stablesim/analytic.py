"""Closed forms and quadrature for the laws the samplers target.

Max-stable joint and marginal CDFs, the worked two-atom example's ray masses
and region-wise CDF, the multivariate stable characteristic function, the
normalizing constant C_alpha, parametrization conversions, and one-dimensional
tail constants.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._quad import integrate
from .samplers import MaxStableLaw, StableLaw
from .spectral import (
    AngularDensity,
    Atoms,
    SpectralMeasure,
    Sphere,
    UniformLInf,
    marginal_alpha_moment,
)

TWO_PI = 2.0 * math.pi


class NonPositiveArgument(ValueError):
    """CDF evaluation point must be strictly positive in every coordinate."""


def c_alpha(alpha: float) -> float:
    """Normalizing constant: (1-a)/(Gamma(2-a) cos(pi a/2)) with value 2/pi at a=1."""
    if not (0.0 < alpha < 2.0):
        raise ValueError("alpha must lie in (0, 2)")
    if alpha == 1.0:
        return 2.0 / math.pi
    return (1.0 - alpha) / (math.gamma(2.0 - alpha) * math.cos(math.pi * alpha / 2.0))


def psi_alpha(x, alpha: float):
    """The characteristic-exponent kernel; psi_1(0) = 0 by continuity."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if alpha == 1.0:
            val = np.abs(x) * (1.0 + 1j * (math.pi / 2.0) * np.sign(x) * np.log(np.abs(x)))
        else:
            val = np.abs(x) ** alpha * (1.0 - 1j * np.sign(x) * math.tan(math.pi * alpha / 2.0))
    val = np.where(x == 0.0, 0.0 + 0.0j, val)
    return complex(val) if val.ndim == 0 else val


# -------------------------------------------------------- max-stable CDFs

def _atoms_cdf_exponent(points: np.ndarray, weights: np.ndarray, alpha: float, x: np.ndarray) -> float:
    # mass of {r s outside [0, x]} under the radial measure is
    # max_j (s_j / x_j)^alpha, summed against the atom weights
    ratios = points / x[None, :]
    return float(np.sum(weights * np.max(ratios, axis=1) ** alpha))


def max_joint_cdf(law: MaxStableLaw, x, tol: float = 1e-9) -> float:
    """P{xi <= x} = exp(-(radial x spectral) mass of the complement of [0, x])."""
    x = np.asarray(x, dtype=float)
    if x.shape != (law.dim,):
        raise ValueError("x must be a d-vector")
    if np.any(x <= 0.0):
        raise NonPositiveArgument("joint CDF needs x > 0 componentwise")
    v = law.measure.variant
    alpha = law.alpha
    if isinstance(v, Atoms):
        return math.exp(-_atoms_cdf_exponent(v.points, v.weights, alpha, x))
    if isinstance(v, UniformLInf):
        if law.dim != 2:
            raise ValueError("continuous max-CDF quadrature implemented for d=2 only")
        half = law.measure.total_mass / 2.0
        total = 0.0
        for face in (0, 1):
            xf, xo = x[face], x[1 - face]

            def g(u, _xf=xf, _xo=xo):
                return max(_xf**-alpha, (u / _xo) ** alpha)

            kink = xo / xf
            bps = (kink,) if 0.0 < kink < 1.0 else ()
            total += half * integrate(g, 0.0, 1.0, tol=tol / 2, breakpoints=bps)
        return math.exp(-total)
    raise ValueError("angular densities are not max-cone measures")


def max_marginal_cdf(law: MaxStableLaw, j: int, x: float) -> float:
    """Frechet marginal: exp(-c_j x^-alpha) with c_j the marginal scale."""
    if not (x > 0.0):
        raise NonPositiveArgument("marginal CDF needs x > 0")
    scale = marginal_alpha_moment(law.measure, j, law.alpha)
    return math.exp(-scale * x**-law.alpha)


# ------------------------------------------------- worked-example closed forms

def ex1_joint_cdf(weights, alpha: float, x) -> float:
    """Axes-atoms law: exp(-sum_i p_i x_i^-alpha) (independent components)."""
    w = np.asarray(weights, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise NonPositiveArgument("joint CDF needs x > 0 componentwise")
    return math.exp(-float(np.sum(w * x**-alpha)))


def ex2_marginal_scale(alpha: float, d: int = 2) -> float:
    """Marginal scale of the uniform max-cone law: (alpha+d)/((alpha+1)d)."""
    return (alpha + d) / ((alpha + 1.0) * d)


def ex2_joint_cdf(alpha: float, x1: float, x2: float, total_mass: float = 1.0) -> float:
    """Closed-form d=2 uniform max-cone CDF."""
    if x1 <= 0.0 or x2 <= 0.0:
        raise NonPositiveArgument("joint CDF needs x > 0 componentwise")
    lo, hi = (x1, x2) if x1 <= x2 else (x2, x1)
    expo = (alpha * lo * hi ** (-alpha - 1.0) + (alpha + 2.0) * lo**-alpha) / (2.0 * (alpha + 1.0))
    return math.exp(-total_mass * expo)


def ex3_joint_cdf(p: float, q: float, a: float, b: float, alpha: float, x) -> float:
    """Two-atom law at (1, a) and (b, 1): region-wise closed form."""
    x = np.asarray(x, dtype=float)
    x1, x2 = float(x[0]), float(x[1])
    if x1 <= 0.0 or x2 <= 0.0:
        raise NonPositiveArgument("joint CDF needs x > 0 componentwise")
    ratio = x2 / x1
    if ratio < a:
        return math.exp(-(p * a**alpha + q) * x2**-alpha)
    if b > 0.0 and ratio > 1.0 / b:
        return math.exp(-(p + q * b**alpha) * x1**-alpha)
    return math.exp(-p * x1**-alpha - q * x2**-alpha)


def ex3_ray_mass(p: float, q: float, a: float, b: float, alpha: float, which_ray: int, r: float = math.inf) -> float:
    """P{xi lies on the given ray with radial part < r} for the two-atom law.

    Ray 1 is the half-line through (1, a), ray 2 through (b, 1); r = inf gives
    the total mass carried by the ray.
    """
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError("a and b must lie in [0, 1]")
    if abs(p + q - 1.0) > 1e-12:
        raise ValueError("p + q must equal 1")
    if not (alpha > 0.0):
        raise ValueError("alpha must be positive")
    if not (r > 0.0):
        raise ValueError("r must be positive")
    if which_ray == 2:
        p, q, a = q, p, b
    elif which_ray != 1:
        raise ValueError("which_ray must be 1 or 2")
    if a == 0.0:
        # the off-axis coordinate of competing points is then absolutely
        # continuous, so the ray carries no mass
        return 0.0
    denom = q + p * a**alpha
    prefactor = p - p * q * (1.0 - a**alpha) / denom if denom > 0.0 else p
    if math.isinf(r):
        return prefactor
    return prefactor * math.exp(-(p + q * a**-alpha) * r**-alpha)


# ------------------------------------------------- characteristic functions

def stable_cf(law: StableLaw, t, tol: float = 1e-9) -> complex:
    """phi(t) = exp(-(1/C_alpha) integral of psi_alpha(<t, s>) dsigma + i<delta, t>)."""
    t = np.asarray(t, dtype=float)
    if t.shape != (law.dim,):
        raise ValueError("t must be a d-vector")
    v = law.measure.variant
    alpha = law.alpha
    shift = 1j * float(np.dot(law.delta, t))
    if not np.any(t):
        return cmath.exp(shift)
    if isinstance(v, Atoms):
        proj = v.points @ t
        integral = complex(np.sum(v.weights * psi_alpha(proj, alpha)))
    elif isinstance(v, AngularDensity):
        phase = math.atan2(t[1], t[0])
        tnorm = math.hypot(t[0], t[1])
        zeros = ((phase + 0.5 * math.pi) % TWO_PI, (phase + 1.5 * math.pi) % TWO_PI)

        def f(th):
            return v.density(th) * psi_alpha(tnorm * math.cos(th - phase), alpha)

        integral = integrate(f, 0.0, TWO_PI, tol=tol, breakpoints=v.breakpoints + zeros)
    else:
        raise ValueError("characteristic functions need an additive-cone measure")
    return cmath.exp(-integral / c_alpha(alpha) + shift)


# ------------------------------------------------------------ 1-D parameters

@dataclass(frozen=True)
class StableParams1D:
    """One-dimensional parameters (alpha, beta, gamma, delta); gamma is the
    total spectral mass sigma(1) + sigma(-1)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0):
            raise ValueError("alpha must lie in (0, 2)")
        if not (-1.0 <= self.beta <= 1.0):
            raise ValueError("beta must lie in [-1, 1]")
        if not (self.gamma > 0.0):
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class STParams1D:
    """The same law in the scale parametrization common in applications."""

    alpha: float
    beta: float
    sigma: float
    delta: float


def tail_constants(params: StableParams1D) -> tuple[float, float]:
    """(sigma(1), sigma(-1)): the limits of x^alpha P{X > x} and x^alpha P{X < -x}."""
    return (1.0 + params.beta) * params.gamma / 2.0, (1.0 - params.beta) * params.gamma / 2.0


def convert_parametrization(direction: str, params):
    """Bijective conversion between the spectral-mass and scale forms.

    direction "to_st": gamma -> sigma = (gamma / C_alpha)^(1/alpha);
    direction "from_st": sigma -> gamma = C_alpha sigma^alpha.
    """
    if direction == "to_st":
        if not isinstance(params, StableParams1D):
            raise TypeError("to_st expects StableParams1D")
        sigma = (params.gamma / c_alpha(params.alpha)) ** (1.0 / params.alpha)
        return STParams1D(params.alpha, params.beta, sigma, params.delta)
    if direction == "from_st":
        if not isinstance(params, STParams1D):
            raise TypeError("from_st expects STParams1D")
        gamma = c_alpha(params.alpha) * params.sigma**params.alpha
        return StableParams1D(params.alpha, params.beta, gamma, params.delta)
    raise ValueError("direction must be 'to_st' or 'from_st'")


def convert_measure(direction: str, measure: SpectralMeasure, alpha: float) -> SpectralMeasure:
    """Rescale a d>=2 spectral measure between the two parametrizations."""
    factor = c_alpha(alpha)
    if direction == "to_st":
        return measure.scaled(1.0 / factor)
    if direction == "from_st":
        return measure.scaled(factor)
    raise ValueError("direction must be 'to_st' or 'from_st'")


def law_from_params1d(params: StableParams1D) -> StableLaw:
    """The d=1 stable law as atoms at +-1 with masses sigma(+-1)."""
    s_plus, s_minus = tail_constants(params)
    points, weights = [], []
    if s_plus > 0.0:
        points.append([1.0])
        weights.append(s_plus)
    if s_minus > 0.0:
        points.append([-1.0])
        weights.append(s_minus)
    measure = SpectralMeasure.from_atoms(points, weights, Sphere.EUCLIDEAN)
    return StableLaw(params.alpha, measure, np.array([params.delta]))


def cauchy_cdf(x, scale: float):
    """CDF of the symmetric alpha=1 law with the given scale."""
    return 0.5 + np.arctan(np.asarray(x, dtype=float) / scale) / math.pi
