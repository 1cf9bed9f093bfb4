"""Endpoint-anchored kernel sums of Gegenbauer polynomials.

    K_n^(j,k)(1, y) = sum_{i<=n} C_i^(j)(1) C_i^(k)(y) / ||C_i||^2,   y = +-1,

with the even/odd restrictions kappa (even i) and kappa-tilde (odd i).
Only the first argument x = 1 is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import DomainError
from .gegenbauer import (
    GegenbauerExpansion,
    check_alpha,
    norm_sq,
    norm_sq_ratio,
)
from .numerics import gamma, pochhammer

PARITIES = ("all", "even", "odd")


@dataclass(frozen=True)
class KernelQuery:
    alpha: mpmath.mpf
    n: int
    j: int
    k: int
    y: int = 1
    parity: str = "all"

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        for name in ("n", "j", "k"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")
        if self.y not in (1, -1):
            raise DomainError(f"y must be +1 or -1, got {self.y!r}")
        if self.parity not in PARITIES:
            raise DomainError(f"parity must be one of {PARITIES}, got {self.parity!r}")


class _EndpointDerivatives:
    """Fast C_i^(o)(1) for a fixed alpha and a fixed set of orders o."""

    def __init__(self, alpha, orders):
        self.alpha = alpha
        self.orders = sorted(set(orders))
        top = self.orders[-1] if self.orders else 0
        self._den = [mpmath.mpf(2) ** o * pochhammer(alpha + 1, o) for o in range(top + 1)]

    def __call__(self, i):
        out = {}
        shift = i + 2 * self.alpha + 1
        num = mpmath.mpf(1)
        done = 0
        for o in self.orders:
            if o > i:
                out[o] = mpmath.mpf(0)
                continue
            for t in range(done, o):
                num *= (shift + t) * (i - t)
            done = o
            out[o] = num / self._den[o]
        return out


def _summand(dj, dk, weight):
    return dj * dk / weight


def _signed(parity_sums, k, y):
    """Combine even/odd sums of C_i^(j)(1) C_i^(k)(1) into the value at (1, y)."""
    even, odd = parity_sums
    if y == 1:
        return even, odd
    # C_i^(k)(-1) = (-1)^(i+k) C_i^(k)(1)
    sign = -1 if k % 2 else 1
    return sign * even, -sign * odd


def _combine(even, odd, parity):
    if parity == "even":
        return even
    if parity == "odd":
        return odd
    return even + odd


def kernel_value(q):
    """Fresh summation of the kernel described by a KernelQuery."""
    deriv = _EndpointDerivatives(q.alpha, (q.j, q.k))
    sums = [mpmath.mpf(0), mpmath.mpf(0)]
    weight = None
    for i in range(q.n + 1):
        weight = norm_sq(q.alpha, 0) if i == 0 else weight * norm_sq_ratio(q.alpha, i)
        d = deriv(i)
        sums[i % 2] += _summand(d[q.j], d[q.k], weight)
    even, odd = _signed(sums, q.k, q.y)
    return _combine(even, odd, q.parity)


class KernelAccumulator:
    """Running kernel sums at (1, 1) for every pair of the given derivative orders.

    ``extend_to(n)`` folds in indices up to n in O(1) work per index; values
    are then read with ``value(j, k, parity, y)``.  Single owner only.
    """

    def __init__(self, alpha, orders):
        self.alpha = check_alpha(alpha)
        self.orders = sorted(set(int(o) for o in orders))
        self._deriv = _EndpointDerivatives(self.alpha, self.orders)
        self._sums = {
            (a, b): [mpmath.mpf(0), mpmath.mpf(0)]
            for a in self.orders for b in self.orders if a <= b
        }
        self.n = -1
        self._weight = None
        self.last_derivatives = None

    def extend(self):
        i = self.n + 1
        if i == 0:
            self._weight = norm_sq(self.alpha, 0)
        else:
            self._weight = self._weight * norm_sq_ratio(self.alpha, i)
        d = self._deriv(i)
        for (a, b), sums in self._sums.items():
            sums[i % 2] += _summand(d[a], d[b], self._weight)
        self.n = i
        self.last_derivatives = d
        self.last_norm_sq = self._weight
        return d

    def extend_to(self, n):
        while self.n < n:
            self.extend()
        return self

    def value(self, j, k, parity="all", y=1):
        key = (j, k) if j <= k else (k, j)
        even, odd = _signed(self._sums[key], k, y)
        return _combine(even, odd, parity)


def kernel_expansion(alpha, n, j, parity):
    """kappa^(j,0)(1, x) (or its odd analogue) restricted to indices <= n, as an expansion."""
    alpha = check_alpha(alpha)
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    want = 0 if parity == "even" else 1
    deriv = _EndpointDerivatives(alpha, (j,))
    coeffs = []
    weight = None
    for i in range(n + 1):
        weight = norm_sq(alpha, 0) if i == 0 else weight * norm_sq_ratio(alpha, i)
        if i % 2 == want:
            coeffs.append(_summand(deriv(i)[j], mpmath.mpf(1), weight))
        else:
            coeffs.append(mpmath.mpf(0))
    return GegenbauerExpansion(alpha, tuple(coeffs))


def kernel_limit_constant(alpha, k, s):
    """Limits of K_{n-1}^(k,s)(1,1) / n^(2k+2s+2alpha+2) and of the parity kernels.

    Returns ``(full, parity)`` with full = C_{k,s} / 2^(2alpha+k+s+1) and
    parity = 2^(k+s) C_{k,s}, where
    C_{k,s} = 1 / ((k+s+alpha+1) Gamma(alpha+k+1) Gamma(alpha+s+1)).
    """
    alpha = check_alpha(alpha)
    c_ks = 1 / ((k + s + alpha + 1) * gamma(alpha + k + 1) * gamma(alpha + s + 1))
    full = c_ks / mpmath.mpf(2) ** (2 * alpha + k + s + 1)
    parity = mpmath.mpf(2) ** (k + s) * c_ks
    return full, parity
