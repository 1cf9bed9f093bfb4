"""Discrete Gegenbauer-Sobolev orthogonal polynomials.

The inner product is

    (f, g)_S = (f, g)_alpha + M [f^(j)(-1) g^(j)(-1) + f^(j)(1) g^(j)(1)].

Q_n is normalised so that its C_n coefficient is 1 (same leading coefficient
k_n(alpha) as C_n).  Three independent constructions are provided: the
parity-kernel formula, a Gram-matrix (Cholesky) oracle, and the compact
(j+2)-term connection with coefficients gamma_{n,i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import mpmath

from .errors import DomainError, NumericalError, ParameterError
from .gegenbauer import (
    GegenbauerExpansion,
    check_alpha,
    derivative_at_endpoint,
    derivative_shifted_eval,
    evaluate_all,
    inner_product_alpha,
    norm_sq,
    norms_sq_upto,
)
from .kernels import KernelAccumulator, _EndpointDerivatives
from .numerics import pochhammer, to_real


@dataclass(frozen=True)
class SobolevParams:
    alpha: mpmath.mpf
    M: mpmath.mpf
    j: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        M = to_real(self.M)
        if not mpmath.isfinite(M) or M < 0:
            raise ParameterError(f"M must be finite and >= 0, got {M}")
        object.__setattr__(self, "M", M)
        if int(self.j) != self.j or self.j < 0:
            raise ParameterError(f"j must be a nonnegative integer, got {self.j!r}")
        object.__setattr__(self, "j", int(self.j))

    def as_dict(self):
        return {"alpha": self.alpha, "M": self.M, "j": self.j}


@dataclass(frozen=True)
class CompactConnection:
    params: SobolevParams
    n: int
    gammas: tuple

    def reconstruct(self):
        """sum_i gamma_{n,i} (1-x^2)^i (C_{n-i}^(alpha+i))^(i) as a C^(alpha) expansion."""
        total = GegenbauerExpansion(self.params.alpha, (0,) * (self.n + 1))
        for i, g in enumerate(self.gammas):
            total = total + compact_basis_expansion(self.params.alpha, self.n, i).scale(g)
        return total


@dataclass(frozen=True)
class GammaLimits:
    alpha: mpmath.mpf
    j: int
    values: tuple


def _check_n(n, name="n"):
    if int(n) != n or n < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def _check_same_alpha(params, *expansions):
    for e in expansions:
        if e.alpha != params.alpha:
            raise ParameterError(f"alpha mismatch: expansion has {e.alpha}, params have {params.alpha}")


# --------------------------------------------------------------------------
# kernel route

def _parity_kernels(params, n, orders):
    """Even/odd-restricted kernel sums over i < n with i = n (mod 2)."""
    acc = KernelAccumulator(params.alpha, set(orders) | {params.j})
    acc.extend_to(n - 1)
    return acc


def _kernel_factor(params, n, acc):
    """2M C_n^(j)(1) / (1 + 2M kappa^(j,j)(1,1))."""
    j, M = params.j, params.M
    parity = "even" if n % 2 == 0 else "odd"
    kjj = acc.value(j, j, parity) if n > 0 else mpmath.mpf(0)
    cnj = derivative_at_endpoint(params.alpha, n, j, 1)
    return 2 * M * cnj / (1 + 2 * M * kjj)


def sobolev_polynomial(params, n):
    """Q_n as a C^(alpha) expansion via the parity-kernel connection formula."""
    n = _check_n(n)
    alpha, j, M = params.alpha, params.j, params.M
    if M == 0 or n == 0:
        return GegenbauerExpansion.unit(alpha, n)
    deriv = _EndpointDerivatives(alpha, (j,))
    norms = norms_sq_upto(alpha, n)
    kjj = mpmath.mpf(0)
    raw = [mpmath.mpf(0)] * (n + 1)
    for i in range(n % 2, n, 2):
        dj = deriv(i)[j]
        raw[i] = dj / norms[i]
        kjj += dj * dj / norms[i]
    factor = 2 * M * derivative_at_endpoint(alpha, n, j, 1) / (1 + 2 * M * kjj)
    coeffs = [-factor * r for r in raw]
    coeffs[n] = mpmath.mpf(1)
    return GegenbauerExpansion(alpha, tuple(coeffs))


def q_deriv_at_one(params, n, k):
    """(Q_n)^(k)(1) from the kernel formula."""
    n = _check_n(n)
    k = _check_n(k, "k")
    cnk = derivative_at_endpoint(params.alpha, n, k, 1)
    if params.M == 0 or n == 0:
        return cnk
    acc = _parity_kernels(params, n, (k,))
    parity = "even" if n % 2 == 0 else "odd"
    if k == params.j:
        # closed form of the same quantity, free of cancellation
        return cnk / (1 + 2 * params.M * acc.value(k, k, parity))
    return cnk - _kernel_factor(params, n, acc) * acc.value(params.j, k, parity)


def sobolev_norm_sq(params, n):
    """(Q_n, Q_n)_S = ||C_n||^2 + 2M Q_n^(j)(1) C_n^(j)(1)."""
    n = _check_n(n)
    j = params.j
    return (norm_sq(params.alpha, n)
            + 2 * params.M * q_deriv_at_one(params, n, j) * derivative_at_endpoint(params.alpha, n, j, 1))


def sobolev_inner(params, a, b):
    _check_same_alpha(params, a, b)
    j = params.j
    discrete = (a.derivative_at_endpoint(j, -1) * b.derivative_at_endpoint(j, -1)
                + a.derivative_at_endpoint(j, 1) * b.derivative_at_endpoint(j, 1))
    return inner_product_alpha(a, b) + params.M * discrete


class EndpointSweep:
    """Walk n = 0, 1, 2, ... producing endpoint data of Q_n in O(1) per step.

    Each ``step()`` returns a dict for the current n with keys
    ``n``, ``c_deriv`` (order -> C_n^(k)(1)), ``q_deriv`` (order -> Q_n^(k)(1)),
    ``norm_c`` (||C_n||^2), ``norm_s`` ((Q_n, Q_n)_S), ``kappa_jj`` and
    ``factor`` (2M C_n^(j)(1) / (1 + 2M kappa^(j,j))).
    """

    def __init__(self, params, orders=()):
        self.params = params
        self.orders = sorted(set(orders) | {0, params.j})
        self._acc = KernelAccumulator(params.alpha, self.orders)
        self.n = -1

    def step(self):
        p = self.params
        n = self.n + 1
        parity = "even" if n % 2 == 0 else "odd"
        j, M = p.j, p.M
        kernel = {k: self._acc.value(j, k, parity) for k in self.orders}
        kjj = kernel[j]
        d = self._acc.extend()
        norm_c = self._acc.last_norm_sq
        factor = 2 * M * d[j] / (1 + 2 * M * kjj)
        if n == 0 or M == 0:
            q = dict(d)
        else:
            q = {k: d[k] - factor * kernel[k] for k in self.orders}
            # k = j: the subtraction cancels almost completely; use the closed form
            q[j] = d[j] / (1 + 2 * M * kjj)
        self.n = n
        return {
            "n": n,
            "c_deriv": d,
            "q_deriv": q,
            "norm_c": norm_c,
            "norm_s": norm_c + 2 * M * q[j] * d[j],
            "kappa_jj": kjj,
            "factor": factor,
        }


# --------------------------------------------------------------------------
# Gram-matrix oracle

def _gram_matrix(params, size):
    alpha, j, M = params.alpha, params.j, params.M
    norms = norms_sq_upto(alpha, size - 1)
    plus = [derivative_at_endpoint(alpha, i, j, 1) for i in range(size)]
    minus = [derivative_at_endpoint(alpha, i, j, -1) for i in range(size)]
    G = mpmath.matrix(size, size)
    for r in range(size):
        for c in range(size):
            G[r, c] = M * (minus[r] * minus[c] + plus[r] * plus[c])
        G[r, r] += norms[r]
    return G, norms, plus


def _guard_digits(params, norms, plus):
    """Extra digits covering the conditioning of the scaled Gram matrix."""
    spread = 1 + 2 * params.M * mpmath.fsum(p * p / w for p, w in zip(plus, norms))
    return int(mpmath.ceil(mpmath.log10(spread))) + 10


def gram_schmidt_family(params, n_max):
    """[Q_0, ..., Q_{n_max}] from a Cholesky factorisation of the Gram matrix.

    The Gram matrix of C_0..C_{n_max} under (., .)_S is diag(||C_i||^2) plus
    the rank-2 endpoint term; leading principal blocks of its Cholesky factor
    are the factors of the smaller Gram matrices, so one factorisation
    serves every degree.
    """
    n_max = _check_n(n_max)
    size = n_max + 1
    with mpmath.workdps(mpmath.mp.dps):
        G, norms, plus = _gram_matrix(params, size)
        guard = _guard_digits(params, norms, plus)
    with mpmath.workdps(mpmath.mp.dps + guard):
        G, _, _ = _gram_matrix(params, size)
        L = mpmath.matrix(size, size)
        for c in range(size):
            diag = G[c, c] - mpmath.fsum(L[c, t] ** 2 for t in range(c))
            if diag <= 0:
                raise NumericalError(f"Gram matrix not positive definite at column {c}")
            L[c, c] = mpmath.sqrt(diag)
            for r in range(c + 1, size):
                L[r, c] = (G[r, c] - mpmath.fsum(L[r, t] * L[c, t] for t in range(c))) / L[c, c]
        family = []
        for n in range(size):
            # solve G[:n,:n] a = -G[:n, n] with G[:n,:n] = L_n L_n^T
            y = []
            for r in range(n):
                y.append((-G[r, n] - mpmath.fsum(L[r, t] * y[t] for t in range(r))) / L[r, r])
            a = [mpmath.mpf(0)] * n
            for r in range(n - 1, -1, -1):
                a[r] = (y[r] - mpmath.fsum(L[t, r] * a[t] for t in range(r + 1, n))) / L[r, r]
            family.append(a + [mpmath.mpf(1)])
    return [GegenbauerExpansion(params.alpha, tuple(+c for c in coeffs)) for coeffs in family]


def gram_schmidt_oracle(params, n):
    """Q_n from the Gram-matrix linear system (independent of the kernel formula)."""
    return gram_schmidt_family(params, n)[-1]


# --------------------------------------------------------------------------
# compact (j+2)-term connection

def basis_derivative_at_one(alpha, n, i, k):
    """k-th derivative at x=1 of (1-x^2)^i (C_{n-i}^(alpha+i))^(i)(x), by Leibniz.

    Writing the function as (1-x)^i * w(x) with w = (1+x)^i g and
    g = (C_{n-i}^(alpha+i))^(i), only the term with exactly i derivatives on
    (1-x)^i survives at x=1.
    """
    alpha = check_alpha(alpha)
    if k < i or i > n - i:
        return mpmath.mpf(0)
    m = k - i
    total = mpmath.mpf(0)
    for b in range(min(m, i) + 1):
        v_b = mpmath.mpf(factorial(i) // factorial(i - b)) * mpmath.mpf(2) ** (i - b)
        g_der = derivative_at_endpoint(alpha + i, n - i, i + m - b, 1)
        total += comb(m, b) * v_b * g_der
    return comb(k, i) * (-1) ** i * factorial(i) * total


def compact_connection(params, n):
    """gamma_{n,0..j+1} matching Q_n^(k)(1), k = 0..j+1, against the compact basis."""
    n = _check_n(n)
    j = params.j
    if n < 2 * j + 2:
        raise DomainError(f"compact connection needs n >= 2j+2 = {2 * j + 2}, got n={n}")
    size = j + 2
    A = mpmath.matrix(size, size)
    rhs = mpmath.matrix(size, 1)
    for k in range(size):
        for i in range(size):
            A[k, i] = basis_derivative_at_one(params.alpha, n, i, k)
        rhs[k] = q_deriv_at_one(params, n, k)
    for i in range(size):
        if A[i, i] == 0:
            raise NumericalError(f"compact connection system singular at row {i}")
    sol = mpmath.lu_solve(A, rhs)
    return CompactConnection(params, n, tuple(sol[i] for i in range(size)))


def compact_basis_expansion(alpha, n, i):
    """C^(alpha) coefficients of (1-x^2)^i (C_{n-i}^(alpha+i))^(i), by Gauss quadrature."""
    from .gegenbauer import gauss_gegenbauer

    alpha = check_alpha(alpha)
    nodes, weights = gauss_gegenbauer(alpha, n + 1)
    norms = norms_sq_upto(alpha, n)
    coeffs = [mpmath.mpf(0)] * (n + 1)
    for x, w in zip(nodes, weights):
        f = (1 - x * x) ** i * derivative_shifted_eval(alpha + i, n - i, i, x)
        wf = w * f
        for m, c in enumerate(evaluate_all(alpha, n, x)):
            coeffs[m] += wf * c
    parity = n % 2
    coeffs = [c / norms[m] if m % 2 == parity else mpmath.mpf(0) for m, c in enumerate(coeffs)]
    return GegenbauerExpansion(alpha, tuple(coeffs))


# --------------------------------------------------------------------------
# limits

def relative_limit_constant(alpha, j, k):
    """lim Q_n^(k)(1) / C_n^(k)(1) = (k - j) / (j + k + alpha + 1)."""
    alpha = check_alpha(alpha)
    return (k - j) / (j + k + alpha + 1)


def gamma_limits(alpha, j):
    """Limits gamma_i = lim_n gamma_{n,i}, i = 0..j+1.

    Obtained by dividing the k-th derivative at 1 of the compact connection by
    C_n^(k)(1) and letting n -> infinity, which gives the triangular system

        sum_{i<=k} gamma_i C(k,i) (-2)^i i! (alpha+1)_k / (alpha+i+1)_k
            = (k - j) / (j + k + alpha + 1),   k = 0..j+1.
    """
    alpha = check_alpha(alpha)
    values = []
    for i in range(j + 2):
        target = relative_limit_constant(alpha, j, i)
        acc = mpmath.mpf(0)
        for t, g in enumerate(values):
            acc += g * comb(i, t) * (-2) ** t * factorial(t) * _poch_ratio(alpha, t, i)
        diag = (-2) ** i * factorial(i) * _poch_ratio(alpha, i, i)
        values.append((target - acc) / diag)
    return GammaLimits(alpha, j, tuple(values))


def _poch_ratio(alpha, i, k):
    """(alpha+1)_k / (alpha+i+1)_k."""
    return pochhammer(alpha + 1, k) / pochhammer(alpha + i + 1, k)
