"""Bracketed scalar root refinement shared by the zero finders."""

from __future__ import annotations

import numpy as np

from .errors import ConsistencyError


def _sign(v):
    return (v > 0) - (v < 0)


def refine_root(f, a, b, tol, fa=None, fb=None, method="bisection", max_iter=2000):
    """Shrink a sign-change bracket [a, b] of f below width ``tol``.

    ``method="bisection"`` halves the bracket; ``"illinois"`` uses the
    Illinois variant of regula falsi with a bisection step whenever the
    bracket fails to halve, so the bracket invariant is never lost.
    Returns the bracket midpoint.
    """
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0:
        return a
    if fb == 0:
        return b
    if _sign(fa) == _sign(fb):
        raise ConsistencyError(f"no sign change on [{a}, {b}]")
    side = 0
    for it in range(max_iter):
        width = b - a
        if width < tol:
            return (a + b) / 2
        if method == "illinois" and it % 3 != 2:
            c = (a * fb - b * fa) / (fb - fa)
            if not (a < c < b):
                c = (a + b) / 2
        else:
            c = (a + b) / 2
        fc = f(c)
        if fc == 0:
            return c
        if _sign(fc) == _sign(fa):
            a, fa = c, fc
            if side == -1:
                fb /= 2
            side = -1
        else:
            b, fb = c, fc
            if side == 1:
                fa /= 2
            side = 1
    raise ConsistencyError(f"root refinement did not converge on [{a}, {b}]")


def sign_change_brackets(xs, values):
    """Consecutive index pairs (k, k+1) whose values change strict sign."""
    out = []
    for k in range(len(xs) - 1):
        if _sign(values[k]) * _sign(values[k + 1]) < 0:
            out.append(k)
    return out


def chebyshev_half_grid(n):
    """Non-negative half of the (16n + 64)-point Chebyshev-Lobatto grid, ascending."""
    size = 16 * n + 64
    grid = np.cos(np.pi * np.arange(size) / (size - 1))
    # x = 0 is the symmetry point and must be sampled
    return np.unique(np.concatenate(([0.0], grid[grid >= 0])))
