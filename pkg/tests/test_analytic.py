import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablesim import analytic
from stablesim.analytic import (
    NonPositiveArgument,
    STParams1D,
    StableParams1D,
    c_alpha,
    cauchy_cdf,
    convert_measure,
    convert_parametrization,
    ex1_joint_cdf,
    ex2_joint_cdf,
    ex2_marginal_scale,
    ex3_joint_cdf,
    ex3_ray_mass,
    law_from_params1d,
    max_joint_cdf,
    max_marginal_cdf,
    psi_alpha,
    stable_cf,
    tail_constants,
)
from stablesim.samplers import MaxStableLaw, StableLaw
from stablesim.spectral import SpectralMeasure, Sphere


# -------------------------------------------------------------------- c_alpha

def test_c_alpha_at_one():
    assert c_alpha(1.0) == 2.0 / math.pi


def test_c_alpha_at_half():
    # direct evaluation with Gamma(1.5) = sqrt(pi)/2
    expected = 0.5 / ((math.sqrt(math.pi) / 2.0) * math.cos(math.pi / 4.0))
    assert c_alpha(0.5) == pytest.approx(expected, rel=1e-14)
    assert c_alpha(0.5) == pytest.approx(0.7978845608028653, rel=1e-12)


def test_c_alpha_small_alpha_limit():
    assert c_alpha(1e-9) == pytest.approx(1.0, abs=1e-7)


def test_c_alpha_range():
    for bad in (0.0, 2.0, -0.3, 2.5):
        with pytest.raises(ValueError):
            c_alpha(bad)


# ------------------------------------------------------------------ psi kernel

def test_psi_zero_by_continuity():
    assert psi_alpha(0.0, 1.0) == 0.0
    assert psi_alpha(0.0, 0.75) == 0.0
    small = psi_alpha(1e-12, 1.0)
    assert abs(small) < 1e-10


def test_psi_branches():
    v = psi_alpha(2.0, 0.5)
    assert v.real == pytest.approx(2.0**0.5)
    assert v.imag == pytest.approx(-(2.0**0.5) * math.tan(math.pi / 4.0))
    w = psi_alpha(-3.0, 1.0)
    assert w.real == pytest.approx(3.0)
    assert w.imag == pytest.approx(-3.0 * (math.pi / 2.0) * math.log(3.0))


# ----------------------------------------------------------- max-stable CDFs

def test_joint_cdf_example1_formula(axes_linf):
    law = MaxStableLaw(0.75, axes_linf)
    x = np.array([1.3, 0.8])
    assert max_joint_cdf(law, x) == pytest.approx(ex1_joint_cdf([0.5, 0.5], 0.75, x), abs=1e-15)


def test_joint_cdf_example3_regions():
    p, q, a, b = 0.3, 0.7, 0.6, 0.4
    m = SpectralMeasure.from_atoms([[1.0, a], [b, 1.0]], [p, q], Sphere.LINF)
    law = MaxStableLaw(0.75, m)
    for x in ([1.0, 0.9], [1.0, 0.3], [0.5, 2.0]):
        assert max_joint_cdf(law, np.array(x)) == pytest.approx(
            ex3_joint_cdf(p, q, a, b, 0.75, x), abs=1e-15
        )


def test_joint_cdf_limit_at_large_x(two_atom_linf):
    law = MaxStableLaw(0.75, two_atom_linf)
    assert abs(max_joint_cdf(law, [1e6, 1e6]) - 1.0) < 1e-4
    uni = MaxStableLaw(0.75, SpectralMeasure.uniform_linf(2))
    assert abs(max_joint_cdf(uni, [1e6, 1e6]) - 1.0) < 1e-4


def test_joint_cdf_uniform_quadrature_matches_closed_form():
    alpha = 0.75
    law = MaxStableLaw(alpha, SpectralMeasure.uniform_linf(2))
    for x1, x2 in ((0.2, 0.2), (0.5, 2.0), (3.0, 0.4), (1.0, 1.0)):
        assert max_joint_cdf(law, [x1, x2]) == pytest.approx(ex2_joint_cdf(alpha, x1, x2), abs=1e-9)


def test_joint_cdf_rejects_nonpositive(two_atom_linf):
    law = MaxStableLaw(0.75, two_atom_linf)
    with pytest.raises(NonPositiveArgument):
        max_joint_cdf(law, [1.0, 0.0])
    with pytest.raises(NonPositiveArgument):
        max_marginal_cdf(law, 0, -1.0)


def test_marginal_cdf_forms(axes_linf):
    law = MaxStableLaw(0.75, axes_linf)
    assert max_marginal_cdf(law, 0, 2.0) == pytest.approx(math.exp(-0.5 * 2.0**-0.75), rel=1e-12)
    uni = MaxStableLaw(0.75, SpectralMeasure.uniform_linf(2))
    expected = math.exp(-ex2_marginal_scale(0.75, 2) * 2.0**-0.75)
    assert max_marginal_cdf(uni, 1, 2.0) == pytest.approx(expected, rel=1e-9)
    assert max_marginal_cdf(law, 0, 1e-300) == 0.0


def test_marginalized_joint_matches_marginal(two_atom_linf):
    law = MaxStableLaw(0.75, two_atom_linf)
    for x in (0.5, 1.5, 3.0):
        joint = max_joint_cdf(law, [x, 1e9])
        assert joint == pytest.approx(max_marginal_cdf(law, 0, x), abs=1e-6)
    uni = MaxStableLaw(0.75, SpectralMeasure.uniform_linf(2))
    assert max_joint_cdf(uni, [1.2, 1e9]) == pytest.approx(max_marginal_cdf(uni, 0, 1.2), abs=1e-6)


def test_doubling_identity_machine_precision(two_atom_linf):
    alpha = 0.75
    law = MaxStableLaw(alpha, two_atom_linf)
    c = 2.0 ** (1.0 / alpha)
    rng = np.random.default_rng(5)
    for _ in range(50):
        x = rng.uniform(0.3, 4.0, size=2)
        assert abs(max_joint_cdf(law, x) - max_joint_cdf(law, c * x) ** 2) < 1e-12


def test_total_mass_scaling_powers_cdf(two_atom_linf):
    alpha = 0.75
    law = MaxStableLaw(alpha, two_atom_linf)
    law3 = MaxStableLaw(alpha, two_atom_linf.scaled(3.0))
    x = np.array([0.9, 1.7])
    assert max_joint_cdf(law3, x) == pytest.approx(max_joint_cdf(law, x) ** 3, rel=1e-12)


# ------------------------------------------------------------------ ray masses

def test_ray_mass_endpoints():
    assert ex3_ray_mass(0.3, 0.7, 1.0, 0.5, 0.75, 1) == pytest.approx(0.3, abs=1e-15)
    assert ex3_ray_mass(0.3, 0.7, 0.0, 0.5, 0.75, 1) == 0.0
    # finite r with a = 0 is also massless
    assert ex3_ray_mass(0.3, 0.7, 0.0, 0.5, 0.75, 1, r=5.0) == 0.0


def test_ray_mass_reference_value():
    assert ex3_ray_mass(0.5, 0.5, 0.5, 0.5, 0.75, 1) == pytest.approx(0.37288488082458904, rel=1e-12)
    assert ex3_ray_mass(0.5, 0.5, 0.5, 0.5, 0.75, 2) == pytest.approx(0.37288488082458904, rel=1e-12)


def test_ray_mass_monotone_in_r():
    vals = [ex3_ray_mass(0.4, 0.6, 0.5, 0.3, 0.75, 1, r) for r in (0.5, 1.0, 2.0, math.inf)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_ray_mass_validation():
    with pytest.raises(ValueError):
        ex3_ray_mass(0.5, 0.6, 0.5, 0.5, 0.75, 1)
    with pytest.raises(ValueError):
        ex3_ray_mass(0.5, 0.5, 1.5, 0.5, 0.75, 1)
    with pytest.raises(ValueError):
        ex3_ray_mass(0.5, 0.5, 0.5, 0.5, 0.75, 3)


# -------------------------------------------------------- characteristic fns

def test_cf_at_zero_is_one():
    law = StableLaw(1.5, SpectralMeasure.angular("f3"))
    assert stable_cf(law, [0.0, 0.0]) == 1.0


def test_cf_1d_symmetric_cauchy_form():
    law = law_from_params1d(StableParams1D(1.0, 0.0, 1.0, 0.0))
    for t in (0.5, -2.0, 3.7):
        assert stable_cf(law, [t]) == pytest.approx(cmath.exp(-math.pi / 2.0 * abs(t)), rel=1e-12)


def test_cf_symmetric_measure_is_real():
    sym = SpectralMeasure.from_atoms(
        [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], [0.3, 0.3, 0.2, 0.2], Sphere.EUCLIDEAN
    )
    law = StableLaw(1.5, sym)
    for t in ([1.0, 0.0], [0.3, -0.7], [-2.0, 1.0]):
        assert abs(stable_cf(law, t).imag) < 1e-12
    f3law = StableLaw(1.5, SpectralMeasure.angular("f3"))
    for t in ([1.0, 0.0], [0.3, -0.7]):
        assert abs(stable_cf(f3law, t, tol=1e-12).imag) < 1e-11


def test_cf_delta_shift():
    law = law_from_params1d(StableParams1D(1.0, 0.0, 1.0, 0.7))
    base = law_from_params1d(StableParams1D(1.0, 0.0, 1.0, 0.0))
    t = 1.3
    assert stable_cf(law, [t]) == pytest.approx(stable_cf(base, [t]) * cmath.exp(1j * 0.7 * t), rel=1e-12)


def test_cf_quadrature_matches_atom_discretization():
    # a fine atomic discretization of the f3 density reproduces the
    # quadrature path values
    law = StableLaw(1.5, SpectralMeasure.angular("f3"))
    v = law.measure.variant
    mids = 0.5 * (v.theta_edges[:-1] + v.theta_edges[1:])
    masses = np.diff(v.cum)
    keep = masses > 0.0
    pts = np.column_stack([np.cos(mids[keep]), np.sin(mids[keep])])
    atoms = SpectralMeasure.from_atoms(pts, masses[keep], Sphere.EUCLIDEAN)
    alaw = StableLaw(1.5, atoms.scaled(1.0 / atoms.total_mass))
    for t in ([1.0, 0.0], [0.5, 0.5], [-1.5, 2.0]):
        assert abs(stable_cf(law, t) - stable_cf(alaw, t)) < 1e-6


def test_cf_stability_identity_atoms():
    skew = StableLaw(0.75, SpectralMeasure.from_atoms(np.eye(2), [0.4, 0.6], Sphere.EUCLIDEAN))
    ia = 1.0 / skew.alpha
    for aa, bb in ((1.0, 1.0), (1.0, 2.0), (0.3, 0.7)):
        for t in ([1.0, 0.0], [0.3, -0.7]):
            t = np.asarray(t)
            lhs = stable_cf(skew, aa**ia * t) * stable_cf(skew, bb**ia * t)
            rhs = stable_cf(skew, (aa + bb) ** ia * t)
            assert abs(lhs - rhs) < 1e-10


# ----------------------------------------------------------- parametrization

def test_tail_constants_cases():
    assert tail_constants(StableParams1D(0.75, 0.0, 1.0, 0.0)) == (0.5, 0.5)
    assert tail_constants(StableParams1D(0.75, 1.0, 2.0, 0.0)) == (2.0, 0.0)
    assert tail_constants(StableParams1D(0.75, 0.5, 1.0, 0.0)) == (0.75, 0.25)


def test_convert_alpha_one_reference():
    st_form = convert_parametrization("to_st", StableParams1D(1.0, 0.0, 2.0 / math.pi, 0.0))
    assert st_form.sigma == pytest.approx(1.0, rel=1e-14)
    back = convert_parametrization("from_st", STParams1D(1.0, 0.0, 1.0, 0.0))
    assert back.gamma == pytest.approx(2.0 / math.pi, rel=1e-14)


@given(
    st.floats(min_value=0.05, max_value=1.95).filter(lambda a: abs(a - 1.0) > 1e-6),
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=0.1, max_value=5.0),
)
@settings(max_examples=50, deadline=None)
def test_round_trip_identity(alpha, beta, gamma):
    params = StableParams1D(alpha, beta, gamma, 0.3)
    back = convert_parametrization("from_st", convert_parametrization("to_st", params))
    assert abs(back.gamma - gamma) <= 1e-12 * max(1.0, gamma)
    assert back.beta == beta
    assert back.alpha == alpha


def test_convert_measure_scales_weights():
    m = SpectralMeasure.from_atoms(np.eye(2), [0.4, 0.6], Sphere.EUCLIDEAN)
    converted = convert_measure("from_st", m, 0.75)
    factor = c_alpha(0.75)
    np.testing.assert_allclose(converted.variant.weights, factor * np.array([0.4, 0.6]), rtol=1e-14)
    round_trip = convert_measure("to_st", converted, 0.75)
    np.testing.assert_allclose(round_trip.variant.weights, [0.4, 0.6], rtol=1e-13)


def test_law_from_params_totally_skewed():
    law = law_from_params1d(StableParams1D(0.5, 1.0, 1.0, 0.0))
    v = law.measure.variant
    assert v.points.shape == (1, 1) and v.points[0, 0] == 1.0
    assert v.weights[0] == pytest.approx(1.0)


@given(st.floats(min_value=0.1, max_value=1.9).filter(lambda a: abs(a - 1.0) > 1e-9))
@settings(max_examples=30, deadline=None)
def test_doubling_identity_closed_form(alpha):
    c = 2.0 ** (1.0 / alpha)
    f1 = ex2_joint_cdf(alpha, 0.7, 1.9)
    f2 = ex2_joint_cdf(alpha, c * 0.7, c * 1.9)
    assert abs(f1 - f2**2) < 1e-12
