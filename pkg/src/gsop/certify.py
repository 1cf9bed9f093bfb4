"""LimitReport producers for the asymptotic statements.

Each function walks n once (incremental kernel sums) and samples the scaled
quantity at the requested n values.
"""

from __future__ import annotations

import mpmath

from .gegenbauer import check_alpha, derivative_at_endpoint, norm_sq
from .kernels import KernelAccumulator, kernel_limit_constant
from .limits import limit_report
from .numerics import gamma, pochhammer
from .sobolev import EndpointSweep, compact_connection, gamma_limits, relative_limit_constant
from .spectral import eigenvalue_sequence, mu_limit_constant, mu_sequence, spectral_limit_constants

DEFAULT_SCHEDULE = (500, 1000, 2000, 4000)


def _sorted_ns(n_values):
    ns = tuple(sorted(int(n) for n in n_values))
    if not ns or ns[0] < 1:
        raise ValueError("n_values must be positive integers")
    return ns


def endpoint_derivative_report(alpha, k, n_values):
    """C_n^(k)(1) / n^(2k) against 1 / (2^k (alpha+1)_k)."""
    alpha = check_alpha(alpha)
    ns = _sorted_ns(n_values)
    vals = [derivative_at_endpoint(alpha, n, k, 1) / mpmath.mpf(n) ** (2 * k) for n in ns]
    target = 1 / (mpmath.mpf(2) ** k * pochhammer(alpha + 1, k))
    return limit_report(ns, vals, target)


def norm_asymptotic_report(alpha, n_values):
    """||C_n||^2 n^(2alpha+1) against 2^(2alpha) Gamma(alpha+1)^2."""
    alpha = check_alpha(alpha)
    ns = _sorted_ns(n_values)
    vals = [norm_sq(alpha, n) * mpmath.mpf(n) ** (2 * alpha + 1) for n in ns]
    return limit_report(ns, vals, mpmath.mpf(2) ** (2 * alpha) * gamma(alpha + 1) ** 2)


def kernel_limit_report(alpha, k, s, n_values, parity="all"):
    """K_{n-1}^(k,s)(1,1) / n^(2k+2s+2alpha+2) against its limit.

    For parity "even"/"odd" the sampled quantity is the parity kernel
    kappa_{2(n-1)} (even indices <= 2n-2) or its odd analogue (odd indices
    <= 2n-1), over the same power of n, against the parity constant.
    """
    alpha = check_alpha(alpha)
    ns = _sorted_ns(n_values)
    full, half = kernel_limit_constant(alpha, k, s)
    acc = KernelAccumulator(alpha, (k, s))
    vals = []
    for n in ns:
        acc.extend_to(n - 1 if parity == "all" else 2 * n - 1)
        vals.append(acc.value(k, s, parity) / mpmath.mpf(n) ** (2 * k + 2 * s + 2 * alpha + 2))
    return limit_report(ns, vals, full if parity == "all" else half, parity=parity)


def sobolev_sweep_reports(params, n_values):
    """Endpoint-ratio, norm-ratio and internal-ratio reports from one sweep.

    Returns a dict with keys ``("ratio", k)`` for k <= j+1
    (Q_n^(k)(1) / C_n^(k)(1)), ``"norm"`` (sqrt of (Q_n,Q_n)_S / ||C_n||^2)
    and ``"internal"`` (2M C_n^(j)(1) kappa^(j,0) / (1 + 2M kappa^(j,j))).
    """
    ns = _sorted_ns(n_values)
    alpha, j = params.alpha, params.j
    orders = tuple(range(j + 2))
    sweep = EndpointSweep(params, orders)
    want = set(ns)
    samples = {("ratio", k): [] for k in orders}
    samples["norm"] = []
    samples["internal"] = []
    while sweep.n < ns[-1]:
        row = sweep.step()
        if row["n"] not in want:
            continue
        for k in orders:
            samples[("ratio", k)].append(row["q_deriv"][k] / row["c_deriv"][k])
        samples["norm"].append(mpmath.sqrt(row["norm_s"] / row["norm_c"]))
        # Q_n(1) = C_n(1) - factor * kappa^(j,0), so factor * kappa^(j,0) = 1 - Q_n(1)
        samples["internal"].append(row["c_deriv"][0] - row["q_deriv"][0])
    out = {}
    for k in orders:
        out[("ratio", k)] = limit_report(ns, samples[("ratio", k)], relative_limit_constant(alpha, j, k))
    out["norm"] = limit_report(ns, samples["norm"], mpmath.mpf(1))
    out["internal"] = limit_report(ns, samples["internal"], (2 * j + alpha + 1) / (j + alpha + 1))
    return out


def gamma_reports(params, n_values):
    """gamma_{n,i} against gamma_i, one report per i <= j+1."""
    ns = _sorted_ns(n_values)
    limits = gamma_limits(params.alpha, params.j).values
    series = [compact_connection(params, n).gammas for n in ns]
    return [limit_report(ns, [g[i] for g in series], limits[i], index=i)
            for i in range(params.j + 2)]


def mu_reports(alpha, j, n_values):
    """mu_{2n} and mu_{2n+1} over n^(4j+2alpha+4) against the common limit."""
    alpha = check_alpha(alpha)
    ns = _sorted_ns(n_values)
    mu = mu_sequence(alpha, j, 2 * ns[-1] + 1)
    p = 4 * j + 2 * alpha + 4
    target = mu_limit_constant(alpha, j)
    even = limit_report(ns, [mu[2 * n] / mpmath.mpf(n) ** p for n in ns], target, parity="even")
    odd = limit_report(ns, [mu[2 * n + 1] / mpmath.mpf(n) ** p for n in ns], target, parity="odd")
    return even, odd


def lambda_report(params, n_values):
    """lambda~_n / n^(4j+2alpha+4) against the closed-form constant."""
    ns = _sorted_ns(n_values)
    seq = eigenvalue_sequence(params, ns[-1])
    p = 4 * params.j + 2 * params.alpha + 4
    eig_const, _ = spectral_limit_constants(params)
    return limit_report(ns, [seq.lambda_tilde[n] / mpmath.mpf(n) ** p for n in ns], eig_const)
