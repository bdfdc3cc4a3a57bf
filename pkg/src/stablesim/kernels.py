"""Backend selection for the hot sampling kernels.

Set ``STABLESIM_BACKEND=numpy`` to force the vectorized pure-numpy kernels,
``STABLESIM_BACKEND=numba`` to require the JIT kernels; by default numba is
used when importable and numpy otherwise.  Both backends are deterministic
per seed; their draw streams are not bit-identical to each other.
"""

from __future__ import annotations

import os

import numpy as np

from .spectral import Atoms, AngularDensity, SpectralMeasure, UniformLInf

_env = os.environ.get("STABLESIM_BACKEND", "auto").strip().lower()
if _env not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"STABLESIM_BACKEND must be 'numba' or 'numpy', got {_env!r}")

if _env == "numpy":
    from . import _kernels_numpy as _impl

    BACKEND = "numpy"
elif _env == "numba":
    from . import _kernels_numba as _impl

    BACKEND = "numba"
else:
    try:
        from . import _kernels_numba as _impl

        BACKEND = "numba"
    except ImportError:
        from . import _kernels_numpy as _impl

        BACKEND = "numpy"

_DUMMY_PTS = np.zeros((1, 1))
_DUMMY_CUM = np.ones(1)
_DUMMY_TAB = np.array([0.0, 1.0])


def direction_table(measure: SpectralMeasure):
    """Flatten a measure into the (kind, arrays...) form the kernels take."""
    v = measure.variant
    if isinstance(v, Atoms):
        cum = np.cumsum(v.weights) / measure.total_mass
        cum[-1] = 1.0
        return 0, np.ascontiguousarray(v.points), cum, _DUMMY_TAB, _DUMMY_TAB
    if isinstance(v, UniformLInf):
        return 1, _DUMMY_PTS, _DUMMY_CUM, _DUMMY_TAB, _DUMMY_TAB
    cum = v.cum / v.cum[-1]
    cum = cum.copy()
    cum[-1] = 1.0
    return 2, _DUMMY_PTS, _DUMMY_CUM, v.theta_edges, cum


def max_stable_exact(rng, n, d, alpha, table, max_terms):
    return _impl.max_stable_exact(rng, n, d, alpha, *table, max_terms)


def max_stable_fixed_k(rng, n, d, alpha, table, k):
    return _impl.max_stable_fixed_k(rng, n, d, alpha, *table, k)


def stable_sum(rng, n, d, alpha, table, k, c):
    return _impl.stable_sum(rng, n, d, alpha, *table, k, c)


def doa_sum(rng, n, d, alpha, table, nsum, inv_bn):
    return _impl.doa_sum(rng, n, d, alpha, *table, nsum, inv_bn)


def first_hit_index(rng, n, d, table, j, cap):
    return _impl.first_hit_index(rng, n, d, *table, j, cap)
