"""Gegenbauer polynomials C_n^(alpha) normalised by C_n^(alpha)(1) = 1.

They are orthogonal on [-1, 1] against (1 - x^2)^alpha, alpha > -1, and
satisfy the three-term recurrence

    x C_n = a_n C_{n+1} + c_n C_{n-1},   a_n = k_n / k_{n+1},  a_n + c_n = 1,

with a_n = (n + 2 alpha + 1) / (2n + 2 alpha + 1) for n >= 1 and a_0 = 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mp

from .errors import ParameterError, DomainError
from .numerics import gamma, gamma_ratio, pochhammer, to_real


@dataclass(frozen=True)
class GegenbauerParams:
    alpha: mpmath.mpf

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))


@dataclass(frozen=True)
class ClassicalQuantities:
    lambda_n: mpmath.mpf
    k_n: mpmath.mpf
    norm_sq: mpmath.mpf


def check_alpha(alpha):
    if isinstance(alpha, GegenbauerParams):
        return alpha.alpha
    alpha = to_real(alpha)
    if not mpmath.isfinite(alpha) or alpha <= -1:
        raise ParameterError(f"alpha must be finite and > -1, got {alpha}")
    return alpha


def _check_index(n, name="n"):
    if int(n) != n or n < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


# --------------------------------------------------------------------------
# classical quantities

def eigenvalue(alpha, n):
    alpha = check_alpha(alpha)
    n = _check_index(n)
    return n * (n + 2 * alpha + 1)


def leading_coefficient(alpha, n):
    """k_n(alpha) = (n + 2 alpha + 1)_n / (2^n (alpha + 1)_n)."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    return pochhammer(n + 2 * alpha + 1, n) / (mpmath.mpf(2) ** n * pochhammer(alpha + 1, n))


def norm_sq(alpha, n):
    """Squared weighted L2 norm of C_n^(alpha)."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    base = mpmath.mpf(2) ** (2 * alpha + 1) * gamma(alpha + 1) ** 2
    if n == 0:
        # (2 alpha + 1) Gamma(2 alpha + 1) = Gamma(2 alpha + 2) stays finite at alpha = -1/2
        return base / gamma(2 * alpha + 2)
    return base * gamma_ratio(n + 1, n + 2 * alpha + 1) / (2 * n + 2 * alpha + 1)


def norm_sq_ratio(alpha, n):
    """norm_sq(n) / norm_sq(n - 1) for n >= 1."""
    if n == 1:
        return 1 / (2 * alpha + 3)
    return n * (2 * n + 2 * alpha - 1) / ((2 * n + 2 * alpha + 1) * (n + 2 * alpha))


def classical_quantities(alpha, n):
    return ClassicalQuantities(eigenvalue(alpha, n), leading_coefficient(alpha, n), norm_sq(alpha, n))


def recurrence_coeffs(alpha, n):
    """(a_n, c_n) with x C_n = a_n C_{n+1} + c_n C_{n-1}."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    if n == 0:
        return mpmath.mpf(1), mpmath.mpf(0)
    denom = 2 * n + 2 * alpha + 1
    return (n + 2 * alpha + 1) / denom, n / denom


# Per-thread memo of Clenshaw multipliers, keyed by (alpha, dps).
_local = threading.local()


def _multipliers(alpha, n):
    """Lists inv_a[m] = 1/a_m and ratio[m] = c_m/a_m for m <= n."""
    cache = getattr(_local, "cache", None)
    if cache is None:
        cache = _local.cache = {}
    key = (alpha, mp.prec)
    inv_a, ratio = cache.setdefault(key, ([], []))
    for m in range(len(inv_a), n + 1):
        a, c = recurrence_coeffs(alpha, m)
        inv_a.append(1 / a)
        ratio.append(c / a)
    return inv_a, ratio


# --------------------------------------------------------------------------
# evaluation

def evaluate(alpha, n, x):
    """C_n^(alpha)(x) by the forward three-term recurrence."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    x = to_real(x)
    if n == 0:
        return mpmath.mpf(1)
    inv_a, ratio = _multipliers(alpha, n)
    prev, cur = mpmath.mpf(1), x
    for m in range(1, n):
        prev, cur = cur, x * inv_a[m] * cur - ratio[m] * prev
    return cur


def evaluate_all(alpha, n, x):
    """[C_0(x), ..., C_n(x)]."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    x = to_real(x)
    values = [mpmath.mpf(1)]
    if n == 0:
        return values
    inv_a, ratio = _multipliers(alpha, n)
    values.append(x)
    for m in range(1, n):
        values.append(x * inv_a[m] * values[m] - ratio[m] * values[m - 1])
    return values


def endpoint_derivative_factor(alpha, n, k):
    """(C_n^(alpha))^(k)(1), i.e. the prefactor relating it to C_{n-k}^(alpha+k)."""
    if k > n:
        return mpmath.mpf(0)
    num = mpmath.mpf(1)
    for t in range(k):
        # (-1)^k (n+2a+1)_k (-n)_k = prod (n+2a+1+t)(n-t)
        num *= (n + 2 * alpha + 1 + t) * (n - t)
    return num / (mpmath.mpf(2) ** k * pochhammer(alpha + 1, k))


def derivative_at_endpoint(alpha, n, k, endpoint=1):
    """k-th derivative of C_n^(alpha) at x = +1 or x = -1 (zero when k > n)."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    k = _check_index(k, "k")
    if endpoint not in (1, -1):
        raise DomainError(f"endpoint must be +1 or -1, got {endpoint!r}")
    value = endpoint_derivative_factor(alpha, n, k)
    if endpoint == -1 and (n + k) % 2:
        value = -value
    return value


def derivative_shifted_eval(alpha, n, k, x):
    """(C_n^(alpha))^(k)(x) = factor * C_{n-k}^(alpha+k)(x)."""
    alpha = check_alpha(alpha)
    n = _check_index(n)
    k = _check_index(k, "k")
    if k > n:
        return mpmath.mpf(0)
    return endpoint_derivative_factor(alpha, n, k) * evaluate(alpha + k, n - k, x)


# --------------------------------------------------------------------------
# expansions

@dataclass(frozen=True)
class GegenbauerExpansion:
    """p(x) = sum_i coeffs[i] * C_i^(alpha)(x)."""

    alpha: mpmath.mpf
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        coeffs = tuple(to_real(c) for c in self.coeffs)
        if not coeffs:
            coeffs = (mpmath.mpf(0),)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def unit(cls, alpha, n):
        coeffs = [mpmath.mpf(0)] * n + [mpmath.mpf(1)]
        return cls(alpha, tuple(coeffs))

    @property
    def degree(self):
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] != 0:
                return i
        return -1

    @property
    def parity(self):
        """0 (even), 1 (odd) or None when both parities are present."""
        even = any(c != 0 for c in self.coeffs[0::2])
        odd = any(c != 0 for c in self.coeffs[1::2])
        if even and odd:
            return None
        return 1 if odd else 0

    def __call__(self, x):
        return expansion_eval(self, x)

    def __len__(self):
        return len(self.coeffs)

    def _check_same(self, other):
        if other.alpha != self.alpha:
            raise ParameterError(f"alpha mismatch: {self.alpha} vs {other.alpha}")

    def __add__(self, other):
        self._check_same(other)
        size = max(len(self), len(other))
        a = self.coeffs + (0,) * (size - len(self))
        b = other.coeffs + (0,) * (size - len(other))
        return GegenbauerExpansion(self.alpha, tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        factor = to_real(factor)
        return GegenbauerExpansion(self.alpha, tuple(factor * c for c in self.coeffs))

    def derivative_at_endpoint(self, k, endpoint=1):
        total = mpmath.mpf(0)
        for i, c in enumerate(self.coeffs):
            if c != 0 and i >= k:
                total += c * derivative_at_endpoint(self.alpha, i, k, endpoint)
        return total


def expansion_eval(expansion, x):
    """Clenshaw summation of sum_i c_i C_i^(alpha)(x)."""
    x = to_real(x)
    coeffs = expansion.coeffs
    d = len(coeffs) - 1
    if d == 0:
        return +coeffs[0]
    inv_a, ratio = _multipliers(expansion.alpha, d)
    b1 = b2 = mpmath.mpf(0)
    for m in range(d, 0, -1):
        beta_next = -ratio[m + 1] if m + 1 <= d else 0
        b1, b2 = coeffs[m] + x * inv_a[m] * b1 + beta_next * b2, b1
    # S = f_0 + x b_1 + beta_1 b_2
    return coeffs[0] + x * b1 - ratio[1] * b2


def expansion_eval_float(expansion, xs):
    """Vectorised float64 Clenshaw, for coarse scans only."""
    xs = np.asarray(xs, dtype=float)
    coeffs = [float(c) for c in expansion.coeffs]
    d = len(coeffs) - 1
    if d == 0:
        return np.full_like(xs, coeffs[0])
    inv_a, ratio = _multipliers(expansion.alpha, d)
    inv_a = [float(v) for v in inv_a[: d + 1]]
    ratio = [float(v) for v in ratio[: d + 1]] + [0.0]
    b1 = np.zeros_like(xs)
    b2 = np.zeros_like(xs)
    for m in range(d, 0, -1):
        b1, b2 = coeffs[m] + xs * inv_a[m] * b1 - ratio[m + 1] * b2, b1
    return coeffs[0] + xs * b1 - ratio[1] * b2


def naive_expansion_eval(expansion, x):
    """Term-by-term summation; reference for Clenshaw."""
    values = evaluate_all(expansion.alpha, len(expansion.coeffs) - 1, x)
    return mpmath.fsum(c * v for c, v in zip(expansion.coeffs, values))


def inner_product_alpha(a, b):
    """(a, b)_alpha = sum_i a_i b_i ||C_i||^2, exact by orthogonality."""
    if a.alpha != b.alpha:
        raise ParameterError(f"alpha mismatch: {a.alpha} vs {b.alpha}")
    size = min(len(a.coeffs), len(b.coeffs))
    norms = norms_sq_upto(a.alpha, size - 1)
    return mpmath.fsum(x * y * w for x, y, w in zip(a.coeffs, b.coeffs, norms))


def norms_sq_upto(alpha, n):
    """[||C_0||^2, ..., ||C_n||^2] via the ratio recurrence."""
    alpha = check_alpha(alpha)
    values = [norm_sq(alpha, 0)]
    for m in range(1, n + 1):
        values.append(values[-1] * norm_sq_ratio(alpha, m))
    return values


_gauss_cache = {}


def gauss_gegenbauer(alpha, npts):
    """Gauss nodes/weights for the weight (1 - x^2)^alpha on [-1, 1].

    Golub-Welsch eigenvalues of the symmetric Jacobi matrix, polished by
    Newton steps on C_npts; weights from the Christoffel function.
    """
    alpha = check_alpha(alpha)
    key = (alpha, npts, mp.prec)
    if key in _gauss_cache:
        return _gauss_cache[key]
    J = mpmath.matrix(npts, npts)
    for m in range(npts - 1):
        a, _ = recurrence_coeffs(alpha, m)
        _, c = recurrence_coeffs(alpha, m + 1)
        J[m, m + 1] = J[m + 1, m] = mpmath.sqrt(a * c)
    eig = mpmath.eigsy(J, eigvals_only=True)
    nodes = sorted(eig[i] for i in range(npts))
    polished = []
    for x in nodes:
        for _ in range(3):
            f = evaluate(alpha, npts, x)
            df = derivative_shifted_eval(alpha, npts, 1, x)
            x = x - f / df
        polished.append(x)
    norms = norms_sq_upto(alpha, npts - 1)
    weights = []
    for x in polished:
        vals = evaluate_all(alpha, npts - 1, x)
        weights.append(1 / mpmath.fsum(v * v / w for v, w in zip(vals, norms)))
    _gauss_cache[key] = (polished, weights)
    return polished, weights
