"""Vectorized pure-numpy twin of the numba kernels.

Same signatures and same per-seed determinism as `_kernels_numba`, but draws
uniforms in blocks rather than one draw at a time, so the two backends do not
share bit-identical streams.  Rows are processed in slabs to bound memory.
"""

import numpy as np

_SLAB_ELEMS = 2_000_000  # max elements of an (rows, terms) slab
_ROUND = 16  # terms per round of the adaptive-stopping sampler
_HIT_ROUND = 32


def _directions_block(rng, m, d, kind, points, cumw, ttheta, tcum):
    if kind == 0:
        u = rng.random(m)
        idx = np.minimum(np.searchsorted(cumw, u, side="right"), len(cumw) - 1)
        return points[idx]
    if kind == 1:
        face = np.minimum((rng.random(m) * d).astype(np.int64), d - 1)
        out = rng.random((m, d))
        out[np.arange(m), face] = 1.0
        return out
    u = rng.random(m)
    pos = np.clip(np.searchsorted(tcum, u, side="right") - 1, 0, len(tcum) - 2)
    span = tcum[pos + 1] - tcum[pos]
    frac = np.where(span > 0.0, (u - tcum[pos]) / np.where(span > 0.0, span, 1.0), 0.0)
    theta = ttheta[pos] + frac * (ttheta[pos + 1] - ttheta[pos])
    return np.column_stack([np.cos(theta), np.sin(theta)])


def max_stable_exact(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, max_terms):
    out = np.zeros((n, d))
    nterms = np.zeros(n, dtype=np.int64)
    last_change = np.zeros(n, dtype=np.int64)
    gamma = np.zeros(n)
    used = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    B = _ROUND
    while active.size:
        m = active.size
        E = -np.log1p(-rng.random((m, B)))
        G = gamma[active, None] + np.cumsum(E, axis=1)
        R = G ** (-1.0 / alpha)
        D = _directions_block(rng, m * B, d, kind, points, cumw, ttheta, tcum).reshape(m, B, d)
        run = np.empty((m, B + 1, d))
        run[:, 0, :] = out[active]
        run[:, 1:, :] = R[:, :, None] * D
        np.maximum.accumulate(run, axis=1, out=run)
        minrun = run.min(axis=2)
        # stop before in-block term t iff its radius cannot beat the state
        # after t terms; the very first term of a draw is always consumed
        cond = R <= minrun[:, :B]
        cond[:, 0] &= used[active] >= 1
        stopped = cond.any(axis=1)
        stop_t = np.where(stopped, np.argmax(cond, axis=1), B)
        state = np.take_along_axis(run, stop_t[:, None, None], axis=1)[:, 0, :]
        changed = (run[:, 1:, :] > run[:, :-1, :]).any(axis=2)
        tgrid = np.arange(B)[None, :]
        lc_block = np.where(changed & (tgrid < stop_t[:, None]), tgrid + 1, 0).max(axis=1)
        rows = active
        out[rows] = state
        has = lc_block > 0
        last_change[rows[has]] = used[rows[has]] + lc_block[has]
        total = used[rows] + stop_t
        # a draw is flagged iff its stopping index exceeds max_terms, matching
        # the per-draw backend
        over = (stopped & (total > max_terms)) | (~stopped & (total >= max_terms))
        nterms[rows[stopped & ~over]] = total[stopped & ~over]
        nterms[rows[over]] = -1
        keep = ~stopped & ~over
        gamma[rows[keep]] = G[keep, B - 1]
        used[rows[keep]] = total[keep]
        active = rows[keep]
    return out, nterms, last_change


def max_stable_fixed_k(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, k):
    out = np.empty((n, d))
    slab = max(1, _SLAB_ELEMS // max(1, k))
    for s in range(0, n, slab):
        m = min(slab, n - s)
        E = -np.log1p(-rng.random((m, k)))
        R = np.cumsum(E, axis=1) ** (-1.0 / alpha)
        D = _directions_block(rng, m * k, d, kind, points, cumw, ttheta, tcum).reshape(m, k, d)
        out[s : s + m] = (R[:, :, None] * D).max(axis=1)
    return out


def stable_sum(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, k, c):
    out = np.empty((n, d))
    slab = max(1, _SLAB_ELEMS // max(1, k))
    for s in range(0, n, slab):
        m = min(slab, n - s)
        E = -np.log1p(-rng.random((m, k)))
        R = np.cumsum(E, axis=1) ** (-1.0 / alpha)
        D = _directions_block(rng, m * k, d, kind, points, cumw, ttheta, tcum).reshape(m, k, d)
        out[s : s + m] = c * np.einsum("mk,mkd->md", R, D)
    return out


def doa_sum(rng, n, d, alpha, kind, points, cumw, ttheta, tcum, nsum, inv_bn):
    out = np.empty((n, d))
    slab = max(1, _SLAB_ELEMS // max(1, nsum))
    for s in range(0, n, slab):
        m = min(slab, n - s)
        R = (1.0 - rng.random((m, nsum))) ** (-1.0 / alpha)
        D = _directions_block(rng, m * nsum, d, kind, points, cumw, ttheta, tcum).reshape(m, nsum, d)
        out[s : s + m] = inv_bn * np.einsum("mk,mkd->md", R, D)
    return out


def first_hit_index(rng, n, d, kind, points, cumw, ttheta, tcum, j, cap):
    out = np.empty(n, dtype=np.int64)
    seen = np.zeros(n, dtype=np.int64)
    active = np.arange(n)
    B = _HIT_ROUND
    while active.size:
        m = active.size
        D = _directions_block(rng, m * B, d, kind, points, cumw, ttheta, tcum).reshape(m, B, d)
        hit = D[:, :, j] >= 1.0 - 1e-12
        anyhit = hit.any(axis=1)
        first = np.argmax(hit, axis=1)
        rows = active
        out[rows[anyhit]] = seen[rows[anyhit]] + first[anyhit] + 1
        seen[rows] += B
        capped = ~anyhit & (seen[rows] >= cap)
        out[rows[capped]] = cap
        keep = ~anyhit & ~capped
        active = rows[keep]
    return out
