"""Adaptive Simpson quadrature for the 1-D integrals used across the package.

Integrands are cheap scalar functions (spectral densities, max-CDF exponents,
characteristic-function kernels), so a classic recursive Simpson rule with a
Richardson correction is enough.  Known kinks / support boundaries are passed
as breakpoints so every subinterval stays smooth.
"""

from __future__ import annotations

from typing import Callable, Iterable

# Depth 20 doubles the interval count per level: at most 2^20 subintervals.
MAX_DEPTH = 20


def _adapt(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    half = 0.5 * tol
    return _adapt(f, a, fa, m, fm, lm, flm, left, half, depth - 1) + _adapt(
        f, m, fm, b, fb, rm, frm, right, half, depth - 1
    )


def integrate(
    f: Callable[[float], float | complex],
    a: float,
    b: float,
    tol: float = 1e-10,
    breakpoints: Iterable[float] = (),
) -> float | complex:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Interior ``breakpoints`` split the domain before adaptation; the tolerance
    is divided across the resulting segments.  Complex-valued integrands are
    supported (the error estimate uses the complex modulus).
    """
    if b <= a:
        return 0.0
    pts = [a] + sorted(p for p in set(breakpoints) if a < p < b) + [b]
    nseg = len(pts) - 1
    seg_tol = tol / nseg
    total = 0.0
    for lo, hi in zip(pts, pts[1:]):
        fa = f(lo)
        fb = f(hi)
        m = 0.5 * (lo + hi)
        fm = f(m)
        whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
        total += _adapt(f, lo, fa, hi, fb, m, fm, whole, seg_tol, MAX_DEPTH)
    return total
