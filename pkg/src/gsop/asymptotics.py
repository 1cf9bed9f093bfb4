"""Bessel functions, the Mehler-Heine limit function and its zeros.

The limit of Q_n(1 - x^2 / (2 n^2)) is

    phi_{alpha,j}(x) = sum_{i=0}^{j+1} 2^i gamma_i Gamma(alpha+i+1) (x/2)^(-alpha) J_{alpha+2i}(x),

and every (x/2)^(-alpha) J_{alpha+2i}(x) is summed as the power series
(x/2)^(2i) sum_k (-1)^k (x^2/4)^k / (k! Gamma(k + alpha + 2i + 1)), so x = 0 and
negative alpha need no special handling.
"""

from __future__ import annotations

import mpmath

from .errors import DomainError
from .gegenbauer import check_alpha, evaluate, expansion_eval
from .numerics import gamma, to_real
from .roots import refine_root
from .sobolev import gamma_limits, sobolev_polynomial

BESSEL_X_MAX = 100
ZERO_SCAN_STEP = mpmath.mpf("0.05")
ZERO_SCAN_MAX = 200


def _series(nu, z):
    """sum_k (-1)^k z^k / (k! Gamma(k + nu + 1)) for z = x^2/4 >= 0."""
    target = mpmath.mp.dps
    term = 1 / gamma(nu + 1)
    total = term
    biggest = abs(term)
    k = 0
    while True:
        k += 1
        term = -term * z / (k * (k + nu))
        total += term
        biggest = max(biggest, abs(term))
        if k * (k + nu) > z:
            small = abs(term)
            if small <= abs(total) * mpmath.mpf(10) ** (-target - 5):
                break
            if small <= biggest * mpmath.mpf(10) ** (-target - 5) * mpmath.eps:
                break
    return total


def _guard(x):
    # largest series term is about e^x; keep that many extra digits
    return int(float(x) * 0.4343) + 10


def scaled_bessel(alpha, shift, x, limit=BESSEL_X_MAX):
    """(x/2)^(-alpha) J_{alpha+shift}(x) for integer shift >= 0, x >= 0."""
    alpha = to_real(alpha)
    x = to_real(x)
    if x < 0 or x > limit:
        raise DomainError(f"x must lie in [0, {limit}], got {x}")
    nu = alpha + shift
    if nu <= -1:
        raise DomainError(f"order must exceed -1, got {nu}")
    dps = mpmath.mp.dps
    with mpmath.workdps(dps + _guard(x)):
        half = x / 2
        value = half ** shift * _series(nu, half * half) if shift else _series(nu, half * half)
    return +value


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu(x), nu > -1, 0 <= x <= 100."""
    nu = to_real(nu)
    x = to_real(x)
    if nu <= -1:
        raise DomainError(f"nu must exceed -1, got {nu}")
    if x < 0 or x > BESSEL_X_MAX:
        raise DomainError(f"x must lie in [0, {BESSEL_X_MAX}], got {x}")
    if x == 0:
        if nu == 0:
            return mpmath.mpf(1)
        if nu > 0:
            return mpmath.mpf(0)
        raise DomainError(f"J_nu(0) is infinite for nu = {nu} < 0")
    dps = mpmath.mp.dps
    with mpmath.workdps(dps + _guard(x)):
        half = x / 2
        value = half ** nu * _series(nu, half * half)
    return +value


class LimitFunction:
    """phi_{alpha,j} with its gamma_i coefficients precomputed."""

    def __init__(self, alpha, j):
        self.alpha = check_alpha(alpha)
        self.j = int(j)
        self.gammas = gamma_limits(self.alpha, self.j)
        self._weights = [mpmath.mpf(2) ** i * g * gamma(self.alpha + i + 1)
                         for i, g in enumerate(self.gammas.values)]

    def __call__(self, x, limit=BESSEL_X_MAX):
        x = to_real(x)
        return mpmath.fsum(w * scaled_bessel(self.alpha, 2 * i, x, limit)
                           for i, w in enumerate(self._weights) if w != 0)


def phi(alpha, j, x):
    return LimitFunction(alpha, j)(x)


def mh_table(params, n, x_grid, form="algebraic"):
    """Rows (x, Q_n(scaled x), phi(x), |difference|)."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    if form not in ("algebraic", "cos"):
        raise DomainError(f"form must be 'algebraic' or 'cos', got {form!r}")
    Q = sobolev_polynomial(params, n)
    limit = LimitFunction(params.alpha, params.j)
    rows = []
    for x in x_grid:
        x = to_real(x)
        if x < 0 or x > 20:
            raise DomainError(f"Mehler-Heine grid must lie in [0, 20], got {x}")
        arg = 1 - x * x / (2 * n * n) if form == "algebraic" else mpmath.cos(x / n)
        q = expansion_eval(Q, arg)
        f = limit(x)
        rows.append((x, q, f, abs(q - f)))
    return rows


def mh_error(params, n, x_grid, form="algebraic"):
    """max over the grid of |Q_n(1 - x^2/(2n^2)) - phi(x)| (or cos(x/n) scaling)."""
    return max(row[3] for row in mh_table(params, n, x_grid, form))


def classical_mh_error(alpha, n, x_grid, form="algebraic"):
    """Reference sweep for M = 0: max |C_n(scaled x) - Gamma(alpha+1)(x/2)^(-alpha) J_alpha(x)|."""
    alpha = check_alpha(alpha)
    if int(n) != n or n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    g = gamma(alpha + 1)
    worst = mpmath.mpf(0)
    for x in x_grid:
        x = to_real(x)
        arg = 1 - x * x / (2 * n * n) if form == "algebraic" else mpmath.cos(x / n)
        worst = max(worst, abs(evaluate(alpha, n, arg) - g * scaled_bessel(alpha, 0, x)))
    return worst


def default_mh_grid(x_max=10, step="0.1"):
    step = to_real(step)
    count = int(mpmath.nint(to_real(x_max) / step))
    return [k * step for k in range(count + 1)]


def _scan_zeros(f, count, what):
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    zeros = []
    a = ZERO_SCAN_STEP
    fa = f(a)
    while len(zeros) < count:
        b = a + ZERO_SCAN_STEP
        if b > ZERO_SCAN_MAX:
            raise DomainError(f"only {len(zeros)} zeros of {what} found in [0, {ZERO_SCAN_MAX}]")
        fb = f(b)
        if fb == 0:
            zeros.append(b)
            b += ZERO_SCAN_STEP
            fb = f(b)
        elif (fa > 0) != (fb > 0) and fa != 0:
            zeros.append(refine_root(f, a, b, tol, fa, fb))
        a, fa = b, fb
    return zeros


def phi_zeros(alpha, j, count):
    """First ``count`` positive zeros of phi_{alpha,j}."""
    if int(count) != count or count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    limit = LimitFunction(alpha, j)
    return _scan_zeros(lambda x: limit(x, ZERO_SCAN_MAX), int(count), f"phi_{{{alpha},{j}}}")


def bessel_zeros(nu, count):
    """First ``count`` positive zeros of J_nu."""
    nu = to_real(nu)
    if nu <= -1:
        raise DomainError(f"nu must exceed -1, got {nu}")
    if int(count) != count or count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    # (x/2)^(-nu) J_nu has the same positive zeros and no trouble at small x
    return _scan_zeros(lambda x: scaled_bessel(nu, 0, x, ZERO_SCAN_MAX), int(count), f"J_{nu}")
