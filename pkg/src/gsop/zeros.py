"""Real zeros of Q_n and their scaled behaviour near x = 1.

All zeros are real and simple and Q_n has the parity of n, so only the
non-negative zeros are located; the rest follow by symmetry.  Scans run in
float64 for speed, every bracket is re-checked in extended precision before
refinement, and a scan that misses zeros falls back to an extended precision
scan before the count check fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
import numpy as np

from .asymptotics import bessel_zeros, phi_zeros
from .errors import ConsistencyError, DomainError
from .gegenbauer import expansion_eval, expansion_eval_float
from .roots import chebyshev_half_grid, refine_root
from .sobolev import SobolevParams, sobolev_polynomial

EXTERIOR_START = mpmath.mpf("1e-4")
EXTERIOR_CAP = 10


@dataclass(frozen=True)
class ZeroReport:
    params: SobolevParams
    n: int
    zeros: tuple
    outside_count: int
    scaled: tuple
    q_at_one: mpmath.mpf = field(default=None, compare=False)

    @property
    def pre_asymptotic(self):
        """True when j > 0 but Q_n(1) >= 0, so no exterior zeros are expected yet."""
        return self.params.j > 0 and self.q_at_one is not None and self.q_at_one >= 0


@dataclass(frozen=True)
class ScaledZeros:
    """Scaled zeros n*arccos(s_{n,i}) next to their limits.

    For j = 0 the largest zero s_{n,1} tends to 1 and is kept apart in
    ``largest_zero``; ``scaled`` then starts from s_{n,2}.

    ``shifted_errors`` uses (n + alpha + 1/2) arccos(s) instead of n arccos(s),
    the classical Jacobi-zero variable; it removes the O(1/n) offset
    y_i (alpha + 1/2)/n and is reported for diagnosis only.
    """
    scaled: tuple
    targets: tuple
    zeros: tuple
    largest_zero: mpmath.mpf = None
    n: int = None
    alpha: mpmath.mpf = None

    def __iter__(self):
        return iter((self.scaled, self.targets))

    @property
    def errors(self):
        return tuple(abs(s - t) for s, t in zip(self.scaled, self.targets))

    @property
    def shifted_errors(self):
        factor = (self.n + self.alpha + mpmath.mpf(1) / 2) / self.n
        return tuple(abs(s * factor - t) for s, t in zip(self.scaled, self.targets))


def _tol():
    return mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))


def _refine_brackets(Q, xs, method):
    """Refine every float sign change on the ascending grid ``xs``."""
    fvals = expansion_eval_float(Q, xs)
    signs = np.sign(fvals)
    # float Clenshaw error is about eps * sum|c_m|; resolve those signs exactly
    noise = 1e3 * np.finfo(float).eps * float(mpmath.fsum(abs(c) for c in Q.coeffs))
    for k in np.nonzero(np.abs(fvals) <= noise)[0]:
        signs[k] = mpmath.sign(expansion_eval(Q, mpmath.mpf(float(xs[k]))))
    roots = []
    tol = _tol()
    for k in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
        a, b = mpmath.mpf(float(xs[k])), mpmath.mpf(float(xs[k + 1]))
        fa, fb = expansion_eval(Q, a), expansion_eval(Q, b)
        if (fa > 0) == (fb > 0):
            continue
        roots.append(refine_root(lambda x: expansion_eval(Q, x), a, b, tol, fa, fb, method))
    return roots


def _refine_brackets_mp(Q, xs, method):
    pts = [mpmath.mpf(float(x)) for x in xs]
    vals = [expansion_eval(Q, x) for x in pts]
    tol = _tol()
    roots = []
    for k in range(len(pts) - 1):
        if vals[k] != 0 and vals[k + 1] != 0 and (vals[k] > 0) != (vals[k + 1] > 0):
            roots.append(refine_root(lambda x: expansion_eval(Q, x), pts[k], pts[k + 1],
                                     tol, vals[k], vals[k + 1], method))
    return roots


def _exterior_zero(Q, method):
    """The zero beyond x = 1 when Q(1) < 0, else None."""
    q1 = expansion_eval(Q, mpmath.mpf(1))
    if q1 >= 0:
        return q1, None
    delta = EXTERIOR_START
    while 1 + delta <= EXTERIOR_CAP:
        b = 1 + delta
        fb = expansion_eval(Q, b)
        if fb > 0:
            root = refine_root(lambda x: expansion_eval(Q, x), mpmath.mpf(1), b, _tol(), q1, fb, method)
            return q1, root
        delta *= 2
    raise ConsistencyError(f"no exterior zero found in (1, {EXTERIOR_CAP}] although Q_n(1) < 0")


def polynomial_zeros(params, n, method="illinois"):
    """All n real zeros of Q_n, ascending, with the inside/outside split."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    Q = sobolev_polynomial(params, n)
    grid = chebyshev_half_grid(n)
    # drop 0 for odd n: it is an exact zero and would produce a spurious bracket
    scan = grid if n % 2 == 0 else grid[1:]
    q1, outer = _exterior_zero(Q, method)
    expected_inside = n // 2 - (1 if outer is not None else 0)
    inner = _refine_brackets(Q, scan, method)
    if len(inner) != expected_inside:
        inner = _refine_brackets_mp(Q, scan, method)
    positive = sorted(inner) + ([outer] if outer is not None else [])
    if len(positive) != n // 2:
        raise ConsistencyError(f"found {2 * len(positive) + n % 2} real zeros of Q_{n}, expected {n}")
    zeros = [-z for z in reversed(positive)] + ([mpmath.mpf(0)] if n % 2 else []) + positive
    outside = 2 if outer is not None else 0
    scaled = tuple(n * mpmath.acos(z) for z in reversed(positive) if 0 < z < 1)
    return ZeroReport(params, n, tuple(zeros), outside, scaled, q1)


def _largest_inner_zeros(Q, n, count, theta_max, method):
    """Largest ``count`` zeros in (0, 1), scanning x = cos(theta/n) for theta in (0, theta_max]."""
    step = 0.05
    thetas = np.arange(0.0, float(theta_max) + step, step)
    xs = np.cos(thetas / n)[::-1]   # ascending
    roots = _refine_brackets(Q, xs, method)
    roots = sorted((r for r in roots if 0 < r < 1), reverse=True)
    if len(roots) < count:
        roots = sorted((r for r in _refine_brackets_mp(Q, xs, method) if 0 < r < 1), reverse=True)
    return roots[:count]


def scaled_zero_report(params, n, count, method="illinois"):
    """Scaled largest zeros n*arccos(s_{n,i}) and their limiting values."""
    if int(count) != count or count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    n, count = int(n), int(count)
    extra = 1 if params.j == 0 else 0
    available = n // 2 - (1 if params.j > 0 else 0)
    if count + extra > available:
        raise DomainError(f"Q_{n} has at most {available} zeros in (0,1); {count + extra} requested")
    if params.j == 0:
        targets = bessel_zeros(params.alpha + 2, count)
    else:
        targets = phi_zeros(params.alpha, params.j, count)
    Q = sobolev_polynomial(params, n)
    theta_max = min(targets[-1] + 4, n * mpmath.pi / 2)
    zeros = _largest_inner_zeros(Q, n, count + extra, theta_max, method)
    if len(zeros) < count + extra:
        raise ConsistencyError(f"only {len(zeros)} zeros of Q_{n} found near x = 1")
    largest = zeros[0] if extra else None
    used = zeros[extra:]
    scaled = tuple(n * mpmath.acos(z) for z in used)
    return ScaledZeros(scaled, tuple(targets), tuple(zeros), largest, n, params.alpha)


def exterior_zero(params, n, method="illinois"):
    """The zero of Q_n beyond x = 1, or None when Q_n(1) >= 0."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    return _exterior_zero(sobolev_polynomial(params, int(n)), method)[1]
