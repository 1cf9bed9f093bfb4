"""Independent reference computations used by the tests.

Nothing here calls into gsop.  Exact values come from sympy rational
arithmetic in the monomial basis (integer alpha keeps every moment
rational); floating references come from mpmath's own special functions.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

import mpmath
import sympy as sp

X = sp.Symbol("x")


def moment(alpha, k):
    """int_{-1}^{1} x^k (1-x^2)^alpha dx for integer alpha >= 0, exact."""
    if k % 2:
        return sp.Integer(0)
    return sp.integrate(X ** k * (1 - X ** 2) ** alpha, (X, -1, 1))


@lru_cache(maxsize=None)
def gegenbauer_poly(alpha, n):
    """C_n^(alpha) normalised to 1 at x = 1, as an exact sympy polynomial."""
    a = sp.Rational(alpha)
    p = sp.jacobi(n, a, a, X)
    return sp.Poly(sp.expand(p / p.subs(X, 1)), X)


def inner_alpha(alpha, p, q):
    prod = sp.Poly(p, X) * sp.Poly(q, X)
    return sum(c * moment(alpha, k) for (k,), c in prod.terms())


def sobolev_inner_exact(alpha, M, j, p, q):
    dp = sp.diff(p.as_expr(), X, j)
    dq = sp.diff(q.as_expr(), X, j)
    disc = dp.subs(X, 1) * dq.subs(X, 1) + dp.subs(X, -1) * dq.subs(X, -1)
    return inner_alpha(alpha, p, q) + sp.Rational(M) * disc


@lru_cache(maxsize=None)
def sobolev_family_exact(alpha, M, j, n_max):
    """Q_0..Q_{n_max} by exact Gram-Schmidt on monomials, leading term matching C_n."""
    basis = []
    for n in range(n_max + 1):
        v = sp.Poly(X ** n, X)
        for b in basis:
            v = v - b * (sobolev_inner_exact(alpha, M, j, v, b) / sobolev_inner_exact(alpha, M, j, b, b))
        basis.append(v)
    out = []
    for n, v in enumerate(basis):
        lead = gegenbauer_poly(alpha, n).LC()
        out.append(v * (lead / v.LC()))
    return tuple(out)


def to_gegenbauer_coeffs(alpha, poly):
    """Coefficients of ``poly`` in the C^(alpha) basis (exact)."""
    poly = sp.Poly(poly, X)
    coeffs = [sp.Integer(0)] * (poly.degree() + 1)
    rest = poly
    for m in range(poly.degree(), -1, -1):
        c = rest.coeff_monomial(X ** m) / gegenbauer_poly(alpha, m).LC()
        coeffs[m] = c
        rest = rest - gegenbauer_poly(alpha, m) * c
    assert rest.is_zero
    return coeffs


def monic_recurrence(alpha, n):
    """(a_n, c_n) of x C_n = a_n C_{n+1} + c_n C_{n-1}, from the monic recurrence.

    Monic Gegenbauer: x p_n = p_{n+1} + beta_n p_{n-1}, with
    beta_n = n (n+2a) / ((2n+2a+1)(2n+2a-1)).  Rescaling by the values at 1
    gives a_n = p_{n+1}(1)/p_n(1) and c_n = beta_n p_{n-1}(1)/p_n(1).
    """
    a = mpmath.mpf(alpha)

    def beta(m):
        if m == 1:
            # (1 + 2a) cancels; this form also covers a = -1/2
            return 1 / (2 * a + 3)
        return m * (m + 2 * a) / ((2 * m + 2 * a + 1) * (2 * m + 2 * a - 1))

    vals = [mpmath.mpf(1), mpmath.mpf(1)]      # p_0(1), p_1(1)
    for m in range(1, n + 1):
        vals.append(vals[m] - beta(m) * vals[m - 1])
    a_n = vals[n + 1] / vals[n]
    c_n = beta(n) * vals[n - 1] / vals[n] if n > 0 else mpmath.mpf(0)
    return a_n, c_n


def phi_taylor(alpha, j, x, terms=None):
    """The Mehler-Heine limit from its Taylor series.

    The scaled k-th derivative at 1 of Q_n gives the coefficient of x^(2k):
    r_k (-1)^k / (4^k k! (alpha+1)_k) with r_k = (k-j)/(j+k+alpha+1).
    """
    with mpmath.workdps(mpmath.mp.dps + 20):
        return +_phi_taylor(mpmath.mpf(alpha), j, mpmath.mpf(x), terms)


def _phi_taylor(a, j, x, terms):
    total = mpmath.mpf(0)
    k = 0
    while True:
        r = mpmath.mpf(k - j) / (j + k + a + 1)
        term = r * (-1) ** k * (x / 2) ** (2 * k) / (mpmath.factorial(k) * mpmath.rf(a + 1, k))
        total += term
        k += 1
        if terms is not None and k >= terms:
            break
        if terms is None and k > max(x, j + 1) and abs(term) < mpmath.eps * 1e-10:
            break
    return total


def printed_compact_derivative(alpha, n, i, k):
    """The k-th derivative at 1 of the i-th compact basis function as printed.

    The printed sum runs over l = 0..k-i of i!/(i-l)! 2^(i-l) D^(k-l) without
    the binomial C(k-i, l); terms with l > i are dropped (1/(i-l)! = 0).
    """
    a = mpmath.mpf(alpha) + i
    m = n - i
    total = mpmath.mpf(0)
    for l in range(k - i + 1):
        if l > i:
            continue
        total += mpmath.mpf(factorial(i)) / factorial(i - l) * 2 ** (i - l) * _deriv_at_one(a, m, k - l)
    return comb(k, i) * (-1) ** i * factorial(i) * total


def _deriv_at_one(a, m, k):
    if k > m:
        return mpmath.mpf(0)
    out = mpmath.mpf(1)
    for t in range(k):
        out *= (m + 2 * a + 1 + t) * (m - t) / (2 * (a + 1 + t))
    return out


def compact_basis_exact(alpha, n, i):
    """(1-x^2)^i (C_{n-i}^(alpha+i))^(i) as an exact polynomial."""
    c = gegenbauer_poly(alpha + i, n - i).as_expr()
    return sp.Poly(sp.expand((1 - X ** 2) ** i * sp.diff(c, X, i)), X)


def printed_gamma_limits(alpha, j):
    """gamma_i from the recursion exactly as printed (diagonal without i!)."""
    a = mpmath.mpf(alpha)

    def ratio(i, k):
        return mpmath.rf(a + 1, k) / mpmath.rf(a + i + 1, k)

    vals = [mpmath.mpf(-j) / (j + a + 1)]
    for i in range(1, j + 2):
        r = mpmath.mpf(i - j) / (j + i + a + 1)
        s = mpmath.fsum(vals[k] * comb(i, k) * (-2) ** k * factorial(k) * ratio(k, i) for k in range(i))
        vals.append((-1) ** i * (r - s) / (2 ** i * ratio(i, i)))
    return vals
