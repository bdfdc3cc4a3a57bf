import numpy as np
import pytest

from stablesim.spectral import SpectralMeasure, Sphere


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def axes_linf():
    """Two atoms on the axes of the max-cone sphere, weights 1/2 each."""
    return SpectralMeasure.from_atoms(np.eye(2), [0.5, 0.5], Sphere.LINF)


@pytest.fixture
def axes_euclid():
    return SpectralMeasure.from_atoms(np.eye(2), [0.5, 0.5], Sphere.EUCLIDEAN)


@pytest.fixture
def two_atom_linf():
    """Atoms at (1, 0.5) and (0.5, 1) with weights 1/2 each."""
    return SpectralMeasure.from_atoms([[1.0, 0.5], [0.5, 1.0]], [0.5, 0.5], Sphere.LINF)


def frechet_cdf(scale, alpha):
    return lambda x: np.exp(-scale * np.asarray(x, dtype=float) ** -alpha)
