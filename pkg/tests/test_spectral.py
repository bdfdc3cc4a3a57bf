import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablesim.spectral import (
    SpectralMeasure,
    Sphere,
    SphereSubset,
    check_strict_stability,
    check_symmetry,
    contains_directions,
    first_moment,
    marginal_alpha_moment,
    measure_from_json,
    measure_of,
    measure_to_json,
    sample_direction,
    sample_directions,
    sphere_norm,
)

TWO_PI = 2.0 * math.pi


# ----------------------------------------------------------------- validation

def test_atoms_must_lie_on_sphere():
    with pytest.raises(ValueError, match="unit sphere"):
        SpectralMeasure.from_atoms([[0.5, 0.5]], [1.0], Sphere.LINF)
    with pytest.raises(ValueError, match="unit sphere"):
        SpectralMeasure.from_atoms([[1.0, 1.0]], [1.0], Sphere.EUCLIDEAN)


def test_atom_weights_positive():
    with pytest.raises(ValueError, match="positive"):
        SpectralMeasure.from_atoms([[1.0, 0.0], [0.0, 1.0]], [1.0, 0.0], Sphere.LINF)


def test_linf_coordinates_within_unit_box():
    with pytest.raises(ValueError, match=r"\[0, 1\]"):
        SpectralMeasure.from_atoms([[1.0, -0.2]], [1.0], Sphere.LINF)
    # fine on the Euclidean sphere
    m = SpectralMeasure.from_atoms([[0.6, -0.8]], [1.0], Sphere.EUCLIDEAN)
    assert m.total_mass == 1.0


def test_angular_needs_euclid_d2():
    with pytest.raises(ValueError):
        SpectralMeasure(Sphere.LINF, 2, SpectralMeasure.angular("f3").variant, 1.0)


def test_angular_builtins_integrate_to_mass():
    for name in ("f1", "f2", "f3", "uniform"):
        m = SpectralMeasure.angular(name, total_mass=2.5)
        assert m.total_mass == 2.5  # construction validates the integral


def test_unknown_builtin_rejected():
    with pytest.raises(ValueError, match="builtin"):
        SpectralMeasure.angular("f9")


# ------------------------------------------------------------------ sampling

def test_single_atom_always_returned(rng):
    m = SpectralMeasure.from_atoms([[1.0, 0.3]], [2.0], Sphere.LINF)
    for _ in range(5):
        assert np.array_equal(sample_direction(m, rng), [1.0, 0.3])


def test_two_atom_frequency(rng, axes_linf):
    draws = sample_directions(axes_linf, rng, 100_000)
    freq = np.mean(draws[:, 0] == 1.0)
    assert abs(freq - 0.5) < 0.005


def test_uniform_face_probability(rng):
    m = SpectralMeasure.uniform_linf(2)
    draws = sample_directions(m, rng, 100_000)
    freq = np.mean(draws[:, 0] == 1.0)
    assert abs(freq - 0.5) < 3.0 * math.sqrt(0.25 / 100_000)


def test_directions_on_declared_sphere(rng):
    for m in (
        SpectralMeasure.from_atoms([[1.0, 0.2], [0.7, 1.0]], [0.4, 0.6], Sphere.LINF),
        SpectralMeasure.uniform_linf(3),
        SpectralMeasure.angular("f3"),
    ):
        draws = sample_directions(m, rng, 2_000)
        assert np.all(np.abs(sphere_norm(m.sphere, draws) - 1.0) <= 1e-12)


def test_angular_sampling_matches_interval_masses(rng):
    m = SpectralMeasure.angular("f3")
    draws = sample_directions(m, rng, 100_000)
    ang = np.mod(np.arctan2(draws[:, 1], draws[:, 0]), TWO_PI)
    for lo, hi in ((0.0, 0.5 * math.pi), (0.5 * math.pi, math.pi), (0.1, 2.0)):
        target = measure_of(m, SphereSubset.angle_interval(lo, hi))
        freq = np.mean((ang >= lo) & (ang < hi))
        se = math.sqrt(target * (1.0 - target) / 100_000)
        assert abs(freq - target) < 4.0 * se


# ---------------------------------------------------------------- functionals

def test_marginal_moment_axes_atoms(axes_linf):
    assert marginal_alpha_moment(axes_linf, 0, 0.75) == pytest.approx(0.5, abs=1e-15)
    assert marginal_alpha_moment(axes_linf, 1, 1.5) == pytest.approx(0.5, abs=1e-15)


def test_marginal_moment_uniform_closed_constant():
    m = SpectralMeasure.uniform_linf(2)
    assert abs(marginal_alpha_moment(m, 0, 0.75) - 2.75 / 3.5) < 1e-9


def test_marginal_moment_single_offaxis_atom():
    m = SpectralMeasure.from_atoms([[1.0, 0.3]], [1.0], Sphere.LINF)
    assert marginal_alpha_moment(m, 1, 0.75) == pytest.approx(0.3**0.75, rel=1e-14)


def test_marginal_moment_rejects_negative_support():
    m = SpectralMeasure.from_atoms([[0.6, -0.8]], [1.0], Sphere.EUCLIDEAN)
    with pytest.raises(ValueError, match="negative"):
        marginal_alpha_moment(m, 0, 0.75)
    with pytest.raises(ValueError, match="negative"):
        marginal_alpha_moment(SpectralMeasure.angular("f1"), 0, 0.75)


def test_measure_of_examples(two_atom_linf):
    seg = SphereSubset.face_segment(0, 0.25, 0.75)  # contains the atom (1, 0.5)
    assert measure_of(two_atom_linf, seg) == 0.5
    assert measure_of(two_atom_linf, SphereSubset.empty()) == 0.0
    uni = SpectralMeasure.uniform_linf(2, total_mass=1.0)
    assert measure_of(uni, SphereSubset.face_segment(0, 0.0, 0.5)) == pytest.approx(0.25, rel=1e-14)


def test_measure_of_atom_indices(two_atom_linf):
    assert measure_of(two_atom_linf, SphereSubset.atom_indices([0])) == 0.5
    assert measure_of(two_atom_linf, SphereSubset.atom_indices([0, 1])) == 1.0


def test_measure_of_incompatible_subset():
    uni = SpectralMeasure.uniform_linf(2)
    with pytest.raises(ValueError):
        measure_of(uni, SphereSubset.atom_indices([0]))
    with pytest.raises(ValueError):
        measure_of(uni, SphereSubset.angle_interval(0.0, 1.0))
    with pytest.raises(ValueError):
        measure_of(SpectralMeasure.angular("f3"), SphereSubset.face_segment(0, 0.0, 1.0))


def test_scaling_linearity(two_atom_linf):
    seg = SphereSubset.face_segment(0, 0.25, 0.75)
    for c in (0.25, 3.0):
        scaled = two_atom_linf.scaled(c)
        assert measure_of(scaled, seg) == pytest.approx(c * measure_of(two_atom_linf, seg), rel=1e-13)
        assert marginal_alpha_moment(scaled, 1, 0.75) == pytest.approx(
            c * marginal_alpha_moment(two_atom_linf, 1, 0.75), rel=1e-13
        )


def test_empirical_frequencies_match_measure(rng, two_atom_linf):
    n = 100_000
    draws = sample_directions(two_atom_linf, rng, n)
    seg = SphereSubset.face_segment(0, 0.25, 0.75)
    target = measure_of(two_atom_linf, seg) / two_atom_linf.total_mass
    freq = np.mean(contains_directions(seg, draws))
    assert abs(freq - target) < 4.0 * math.sqrt(target * (1.0 - target) / n)

    uni = SpectralMeasure.uniform_linf(2)
    draws = sample_directions(uni, rng, n)
    seg = SphereSubset.face_segment(1, 0.1, 0.4)
    target = measure_of(uni, seg)
    freq = np.mean(contains_directions(seg, draws))
    assert abs(freq - target) < 4.0 * math.sqrt(target * (1.0 - target) / n)


# ------------------------------------------------------------------- checks

def test_strict_stability_cases(axes_euclid):
    assert check_strict_stability(axes_euclid, 0.75, [0.0, 0.0]) is True
    assert check_strict_stability(axes_euclid, 1.5, [0.1, 0.0]) is False
    sym = SpectralMeasure.from_atoms(
        [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]], [0.3, 0.3, 0.2, 0.2], Sphere.EUCLIDEAN
    )
    assert check_strict_stability(sym, 1.0, [0.0, 0.0]) is True
    assert check_strict_stability(axes_euclid, 1.0, [0.0, 0.0]) is False  # nonzero first moment


def test_strict_stability_requires_euclid(axes_linf):
    with pytest.raises(ValueError):
        check_strict_stability(axes_linf, 0.75, [0.0, 0.0])


def test_first_moment_values(axes_euclid):
    assert first_moment(axes_euclid, 0) == pytest.approx(0.5)
    sym = SpectralMeasure.angular("f3")
    assert abs(first_moment(sym, 0)) < 1e-10


def test_symmetry_cases():
    # all three builtin densities are invariant under the antipodal map
    assert check_symmetry(SpectralMeasure.angular("f3")) is True
    assert check_symmetry(SpectralMeasure.angular("f1")) is True
    assert check_symmetry(SpectralMeasure.angular("f2")) is True
    single = SpectralMeasure.from_atoms([[1.0, 0.0]], [1.0], Sphere.EUCLIDEAN)
    assert check_symmetry(single) is False
    pair = SpectralMeasure.from_atoms([[1.0], [-1.0]], [0.5, 0.5], Sphere.EUCLIDEAN)
    assert check_symmetry(pair) is True
    lopsided = SpectralMeasure.from_atoms([[1.0], [-1.0]], [0.6, 0.4], Sphere.EUCLIDEAN)
    assert check_symmetry(lopsided) is False


# --------------------------------------------------------------------- JSON

def test_json_round_trip(two_atom_linf):
    for m in (two_atom_linf, SpectralMeasure.uniform_linf(2, 2.0), SpectralMeasure.angular("f2", 1.5)):
        back = measure_from_json(measure_to_json(m))
        assert back.sphere == m.sphere
        assert back.dim == m.dim
        assert back.total_mass == pytest.approx(m.total_mass, rel=1e-14)


def test_json_errors():
    with pytest.raises(ValueError):
        measure_from_json({"sphere": "euclid", "dim": 2, "variant": {"uniform_linf": {}}, "total_mass": 1.0})
    with pytest.raises(ValueError):
        measure_from_json(
            {
                "sphere": "linf",
                "dim": 2,
                "variant": {"atoms": [{"point": [1.0, 0.0], "weight": 0.5}]},
                "total_mass": 1.0,
            }
        )


@given(st.floats(min_value=0.05, max_value=0.95), st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=20, deadline=None)
def test_face_segment_mass_never_exceeds_total(lo, seed):
    rng = np.random.default_rng(seed)
    hi = min(1.0, lo + float(rng.uniform(0.0, 1.0 - lo)))
    uni = SpectralMeasure.uniform_linf(2)
    val = measure_of(uni, SphereSubset.face_segment(0, lo, hi))
    assert 0.0 <= val <= uni.total_mass
