"""Eigenvalues of T = L + M A on the Sobolev polynomials, sup norms and r0.

The eigenvalues are lambda~_n = n(n + 2 alpha + 1) + M mu_n with the free
values mu_0 = ... = mu_{j+1} = 0 and, for n >= j + 2,

    mu_{j+2t}   = 2 sum_{i=1}^t (2j + 4i + 2alpha - 1) q_{j+2i, j+2i},
    mu_{j+2t+1} = 2 sum_{i=1}^t (2j + 4i + 2alpha + 1) q_{j+2i+1, j+2i+1},

    q_{n,n} = K_{n-1}^(j,j)(1, 1) + (-1)^(n+j) K_{n-1}^(j,j)(1, -1).
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError
from .gegenbauer import check_alpha, evaluate_all, expansion_eval, expansion_eval_float
from .kernels import KernelAccumulator, KernelQuery, kernel_value
from .limits import LimitReport, limit_report  # noqa: F401  LimitReport is part of this module's surface
from .numerics import gamma, to_real
from .roots import chebyshev_half_grid
from .sobolev import EndpointSweep, SobolevParams, sobolev_polynomial


@dataclass(frozen=True)
class EigenvalueSequence:
    params: SobolevParams
    mu: tuple
    lambda_tilde: tuple

    def __len__(self):
        return len(self.mu)


def q_nn(alpha, j, n):
    """q_{n,n} from its definition via two full kernels."""
    alpha = check_alpha(alpha)
    if int(n) != n or n < 1:
        raise DomainError(f"q_nn needs n >= 1, got {n!r}")
    plus = kernel_value(KernelQuery(alpha, n - 1, j, j, 1, "all"))
    minus = kernel_value(KernelQuery(alpha, n - 1, j, j, -1, "all"))
    sign = -1 if (n + j) % 2 else 1
    return plus + sign * minus


def q_nn_parity(alpha, j, n):
    """q_{n,n} as twice the kernel restricted to indices of the parity of n."""
    alpha = check_alpha(alpha)
    if int(n) != n or n < 1:
        raise DomainError(f"q_nn needs n >= 1, got {n!r}")
    parity = "even" if n % 2 == 0 else "odd"
    return 2 * kernel_value(KernelQuery(alpha, n - 1, j, j, 1, parity))


def mu_sequence(alpha, j, N):
    """[mu_0, ..., mu_N] with O(N) incremental kernel updates."""
    alpha = check_alpha(alpha)
    if int(N) != N or N < 0:
        raise DomainError(f"N must be a nonnegative integer, got {N!r}")
    acc = KernelAccumulator(alpha, (j,))
    mu = []
    for n in range(N + 1):
        if n <= j + 1:
            mu.append(mpmath.mpf(0))
        else:
            # accumulator holds indices <= n-1 here
            sign = -1 if (n + j) % 2 else 1
            q = acc.value(j, j, "all", 1) + sign * acc.value(j, j, "all", -1)
            if (n - j) % 2 == 0:
                t = (n - j) // 2
                weight = 2 * j + 4 * t + 2 * alpha - 1
            else:
                t = (n - j - 1) // 2
                weight = 2 * j + 4 * t + 2 * alpha + 1
            mu.append(mu[n - 2] + 2 * weight * q)
        acc.extend()
    return mu


def eigenvalue_sequence(params, N):
    mu = mu_sequence(params.alpha, params.j, N)
    lam = [n * (n + 2 * params.alpha + 1) + params.M * m for n, m in enumerate(mu)]
    return EigenvalueSequence(params, tuple(mu), tuple(lam))


def mu_limit_constant(alpha, j):
    """lim mu_{2n} / n^(4j+2alpha+4) (shared by mu_{2n+1})."""
    alpha = check_alpha(alpha)
    return (mpmath.mpf(2) ** (2 * j + 3)
            / ((2 * j + alpha + 2) * (2 * j + alpha + 1) * gamma(alpha + j + 1) ** 2))


def growth_exponent(params):
    return 4 * params.j + 2 * params.alpha + 4


def spectral_limit_constants(params):
    """(lim lambda~_n / n^(4j+2alpha+4), r0)."""
    if params.M == 0:
        raise DomainError("spectral limits need M > 0 (M = 0 has classical n^2 growth)")
    alpha, j = params.alpha, params.j
    eig_const = params.M / (mpmath.mpf(2) ** (2 * j + 2 * alpha + 1) * (2 * j + alpha + 2)
                            * (2 * j + alpha + 1) * gamma(alpha + j + 1) ** 2)
    if alpha >= mpmath.mpf(-1) / 2:
        r0 = (alpha + mpmath.mpf(1) / 2) / growth_exponent(params)
    else:
        r0 = mpmath.mpf(0)
    return eig_const, r0


# --------------------------------------------------------------------------
# sup norm

def _brent_max(f, a, b, tol, max_iter=500):
    """Derivative-free maximisation of f on [a, b] (Brent's parabolic/golden method)."""
    golden = (3 - mpmath.sqrt(5)) / 2
    x = w = v = a + golden * (b - a)
    fx = fw = fv = -f(x)
    d = e = mpmath.mpf(0)
    for _ in range(max_iter):
        mid = (a + b) / 2
        tol1 = tol / 3
        tol2 = 2 * tol1
        if abs(x - mid) <= tol2 - (b - a) / 2:
            break
        use_golden = True
        if abs(e) > tol1:
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2 * (q - r)
            if q > 0:
                p = -p
            q = abs(q)
            if abs(p) < abs(q * e / 2) and q * (a - x) < p < q * (b - x):
                e, d = d, p / q
                u = x + d
                if u - a < tol2 or b - u < tol2:
                    d = tol1 if mid >= x else -tol1
                use_golden = False
        if use_golden:
            e = (a - x) if x >= mid else (b - x)
            d = golden * e
        u = x + d if abs(d) >= tol1 else x + (tol1 if d > 0 else -tol1)
        fu = -f(u)
        if fu <= fx:
            if u >= x:
                a = x
            else:
                b = x
            v, fv, w, fw, x, fx = w, fw, x, fx, u, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, fv, w, fw = w, fw, u, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu
    return x, -fx


def sup_norm_of(expansion, n_hint=None):
    """(max |p| on [-1, 1], argmax >= 0) for an even or odd expansion."""
    n = n_hint if n_hint is not None else max(len(expansion.coeffs) - 1, 0)
    if len(expansion.coeffs) == 1:
        return abs(expansion.coeffs[0]), mpmath.mpf(0)
    grid = chebyshev_half_grid(n)
    vals = np.abs(expansion_eval_float(expansion, grid))
    top = vals.max()
    # every grid-local maximum within a small margin of the top is a candidate
    idx = [k for k in range(len(grid))
           if vals[k] >= top * (1 - 1e-6) - 1e-12
           and (k == 0 or vals[k] >= vals[k - 1])
           and (k == len(grid) - 1 or vals[k] >= vals[k + 1])]
    tol = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))

    def absq(x):
        return abs(expansion_eval(expansion, x))

    tie = mpmath.mpf(10) ** (10 - mpmath.mp.dps)
    best_x, best_v = None, mpmath.mpf(-1)
    # ties (equioscillation, e.g. alpha = -1/2) resolve to the largest argmax
    for k in reversed(idx[-8:]):
        lo = mpmath.mpf(float(grid[max(k - 1, 0)]))
        hi = mpmath.mpf(float(grid[min(k + 1, len(grid) - 1)]))
        x, v = _brent_max(absq, lo, hi, tol)
        for edge in (lo, hi):
            ev = absq(edge)
            if ev > v:
                x, v = edge, ev
        if v > best_v * (1 + tie):
            best_x, best_v = x, v
    grid_best = absq(mpmath.mpf(float(grid[int(vals.argmax())])))
    if best_v * (1 + tie) < grid_best:
        best_x, best_v = mpmath.mpf(float(grid[int(vals.argmax())])), grid_best
    return best_v, best_x


def sup_norm(params, n):
    """(max_{[-1,1]} |Q_n|, argmax); argmax is reported in [0, 1] by symmetry."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    return sup_norm_of(sobolev_polynomial(params, n), int(n))


# --------------------------------------------------------------------------
# r0

def _slope(xs, ys):
    xs = [to_real(x) for x in xs]
    ys = [to_real(y) for y in ys]
    mx = mpmath.fsum(xs) / len(xs)
    my = mpmath.fsum(ys) / len(ys)
    num = mpmath.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = mpmath.fsum((x - mx) ** 2 for x in xs)
    return num / den


def r0_estimate(params, n_grid):
    """Slope-ratio estimate of r0 with the raw log-ratio sequence.

    ``scaled_values`` holds log(max|Q~_n|) / log(lambda~_n) for each n;
    ``extrapolated`` is slope(log max|Q~_n| vs log n) / slope(log lambda~_n vs log n).
    """
    if params.M == 0:
        raise DomainError("r0 needs M > 0")
    n_grid = [int(n) for n in n_grid]
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])) or min(n_grid) < 50:
        raise DomainError("n_grid must be increasing with minimum >= 50")
    _, target = spectral_limit_constants(params)
    eig = eigenvalue_sequence(params, n_grid[-1])
    sweep = EndpointSweep(params)
    norms = {}
    wanted = set(n_grid)
    for _ in range(n_grid[-1] + 1):
        row = sweep.step()
        if row["n"] in wanted:
            norms[row["n"]] = row["norm_s"]
    sups, log_sup_tilde, log_lam, raw = [], [], [], []
    for n in n_grid:
        s, _ = sup_norm(params, n)
        sups.append(s)
        lst = mpmath.log(s) - mpmath.log(norms[n]) / 2
        ll = mpmath.log(eig.lambda_tilde[n])
        log_sup_tilde.append(lst)
        log_lam.append(ll)
        raw.append(lst / ll)
    logn = [mpmath.log(n) for n in n_grid]
    num_slope = _slope(logn, log_sup_tilde)
    den_slope = _slope(logn, log_lam)
    return limit_report(
        n_grid, raw, target, num_slope / den_slope,
        sup_norms=tuple(sups),
        sobolev_norms_sq=tuple(norms[n] for n in n_grid),
        lambda_tilde=tuple(eig.lambda_tilde[n] for n in n_grid),
        log_sup_slope=num_slope,
        log_lambda_slope=den_slope,
        raw_sup_slope=_slope(logn, [mpmath.log(s) for s in sups]),
    )


# --------------------------------------------------------------------------
# scaled reproducing kernel

def scaled_kernel_partial_sums(params, r, N, x, y):
    """[S_0, ..., S_N] (S_0 = 0) with S_N = sum_{1<=i<=N, lambda~_i>0} lambda~_i^-r Q_i(x) Q_i(y) / ||Q_i||_S^2."""
    r = to_real(r)
    if r <= 0:
        raise DomainError(f"r must be > 0, got {r}")
    if int(N) != N or N < 1:
        raise DomainError(f"N must be >= 1, got {N!r}")
    x = to_real(x)
    y = to_real(y)
    alpha, j = params.alpha, params.j
    eig = eigenvalue_sequence(params, N)
    cx = evaluate_all(alpha, N, x)
    cy = evaluate_all(alpha, N, y)
    sweep = EndpointSweep(params)
    # running same-parity sums of C_m^(j)(1) C_m(x) / ||C_m||^2
    run_x = [mpmath.mpf(0), mpmath.mpf(0)]
    run_y = [mpmath.mpf(0), mpmath.mpf(0)]
    total = mpmath.mpf(0)
    sums = []
    for i in range(N + 1):
        row = sweep.step()
        p = i % 2
        qx = cx[i] - row["factor"] * run_x[p]
        qy = cy[i] - row["factor"] * run_y[p]
        lam = eig.lambda_tilde[i]
        if i >= 1 and lam > 0:
            total += lam ** (-r) * qx * qy / row["norm_s"]
        sums.append(total)
        dj = row["c_deriv"][j]
        run_x[p] += dj * cx[i] / row["norm_c"]
        run_y[p] += dj * cy[i] / row["norm_c"]
    return sums


def scaled_kernel_partial_sum(params, r, N, x, y):
    return scaled_kernel_partial_sums(params, r, N, x, y)[-1]
