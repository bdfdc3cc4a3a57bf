"""Numba-compiled per-draw kernels (the default backend).

Each kernel receives the direction sampler in flattened form: an integer kind
(0 = atoms, 1 = uniform on the L-inf sphere, 2 = angular inverse-CDF table)
plus the arrays that kind needs.  Unused arrays are passed as dummies so all
signatures stay uniform with the numpy backend in `_kernels_numpy`.

Every draw consumes uniforms in a fixed order (one per exponential, then the
direction's uniforms), so results are reproducible bit-for-bit per seed.
"""

import math

import numpy as np
from numba import njit

KERNEL_OPTS = dict(cache=True, nogil=True)


@njit(inline="always")
def _bisect_right(arr, v):
    lo = 0
    hi = arr.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if v < arr[mid]:
            hi = mid
        else:
            lo = mid + 1
    return lo


@njit(inline="always")
def _draw_direction(rng, kind, points, cumw, ttheta, tcum, out):
    d = out.shape[0]
    if kind == 0:
        u = rng.random()
        i = _bisect_right(cumw, u)
        if i >= cumw.shape[0]:
            i = cumw.shape[0] - 1
        for j in range(d):
            out[j] = points[i, j]
    elif kind == 1:
        u = rng.random()
        face = int(u * d)
        if face >= d:
            face = d - 1
        for j in range(d):
            out[j] = rng.random()
        out[face] = 1.0
    else:
        u = rng.random()
        i = _bisect_right(tcum, u) - 1
        if i < 0:
            i = 0
        last = tcum.shape[0] - 2
        if i > last:
            i = last
        span = tcum[i + 1] - tcum[i]
        frac = (u - tcum[i]) / span if span > 0.0 else 0.0
        theta = ttheta[i] + frac * (ttheta[i + 1] - ttheta[i])
        out[0] = math.cos(theta)
        out[1] = math.sin(theta)


@njit(**KERNEL_OPTS)
def max_stable_exact(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, max_terms):
    """Exact draws via adaptive stopping.

    Stops as soon as the next radius cannot exceed the smallest coordinate of
    the running maximum.  Returns (draws, terms_used, last_change_index);
    terms_used is -1 where the cap was hit before stopping.
    """
    out = np.zeros((n, d))
    nterms = np.zeros(n, dtype=np.int64)
    last_change = np.zeros(n, dtype=np.int64)
    eps = np.empty(d)
    inv = 1.0 / alpha
    for row in range(n):
        gamma = 0.0
        i = 0
        minm = 0.0
        while True:
            gamma -= math.log1p(-rng.random())
            r = gamma**-inv
            if i >= 1 and r <= minm:
                nterms[row] = i
                break
            if i >= max_terms:
                nterms[row] = -1
                break
            _draw_direction(rng, kind, points, cumw, ttheta, tcum, eps)
            i += 1
            changed = False
            minm = np.inf
            for j in range(d):
                v = r * eps[j]
                if v > out[row, j]:
                    out[row, j] = v
                    changed = True
                if out[row, j] < minm:
                    minm = out[row, j]
            if changed:
                last_change[row] = i
    return out, nterms, last_change


@njit(**KERNEL_OPTS)
def max_stable_fixed_k(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, k):
    """k-term partial maxima (approximate draws)."""
    out = np.zeros((n, d))
    eps = np.empty(d)
    inv = 1.0 / alpha
    for row in range(n):
        gamma = 0.0
        for _ in range(k):
            gamma -= math.log1p(-rng.random())
            r = gamma**-inv
            _draw_direction(rng, kind, points, cumw, ttheta, tcum, eps)
            for j in range(d):
                v = r * eps[j]
                if v > out[row, j]:
                    out[row, j] = v
    return out


@njit(**KERNEL_OPTS)
def stable_sum(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, k, c):
    """k-term partial sums of the series, scaled by c = sigma(S)^(1/alpha)."""
    out = np.zeros((n, d))
    eps = np.empty(d)
    inv = 1.0 / alpha
    for row in range(n):
        gamma = 0.0
        for _ in range(k):
            gamma -= math.log1p(-rng.random())
            r = gamma**-inv
            _draw_direction(rng, kind, points, cumw, ttheta, tcum, eps)
            for j in range(d):
                out[row, j] += r * eps[j]
        for j in range(d):
            out[row, j] *= c
    return out


@njit(**KERNEL_OPTS)
def doa_sum(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, nsum, inv_bn):
    """Normalized sums of nsum i.i.d. Pareto(alpha) x direction vectors."""
    out = np.zeros((n, d))
    eps = np.empty(d)
    inv = 1.0 / alpha
    for row in range(n):
        for _ in range(nsum):
            u = 1.0 - rng.random()
            r = u**-inv
            _draw_direction(rng, kind, points, cumw, ttheta, tcum, eps)
            for j in range(d):
                out[row, j] += r * eps[j]
        for j in range(d):
            out[row, j] *= inv_bn
    return out


@njit(**KERNEL_OPTS)
def first_hit_index(rng, n, d, kind, points, cumw, ttheta, tcum, j, cap):
    """Index of the first direction whose j-th coordinate equals one."""
    out = np.empty(n, dtype=np.int64)
    eps = np.empty(d)
    for row in range(n):
        i = 0
        while True:
            i += 1
            _draw_direction(rng, kind, points, cumw, ttheta, tcum, eps)
            if eps[j] >= 1.0 - 1e-12:
                out[row] = i
                break
            if i >= cap:
                out[row] = cap
                break
    return out
