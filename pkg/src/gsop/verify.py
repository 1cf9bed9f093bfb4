"""Reduced-grid invariant suite behind ``gsop verify``.

Every module's invariants are checked on a smaller parameter grid and
shorter n schedules than the full acceptance run, so the whole suite
finishes in a few minutes.  Each check returns ``(ok, detail)``.
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass

import mpmath

from . import asymptotics, certify, gegenbauer, numerics, sobolev, spectral, zeros
from .kernels import KernelAccumulator, KernelQuery, kernel_value
from .numerics import relative_error
from .sobolev import SobolevParams

ALPHAS = ("-1/2", "0", "7/10", "2")
REDUCED_GRID = [SobolevParams(a, M, j) for a in ("-1/2", "7/10") for M in ("1/10", "10") for j in (0, 1, 2)]
SCHEDULE = certify.DEFAULT_SCHEDULE

_REGISTRY = []


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    ok: bool
    detail: str
    seconds: float


def invariant(module, name):
    def wrap(fn):
        _REGISTRY.append((module, name, fn))
        return fn
    return wrap


def registered():
    return [(m, n) for m, n, _ in _REGISTRY]


def _tol(shift):
    return mpmath.mpf(10) ** (shift - mpmath.mp.dps)


def max_coefficient_error(a, b):
    """Largest coefficient-wise relative error (absolute where the reference is 0)."""
    return max(relative_error(x, y) for x, y in zip(a.coeffs, b.coeffs))


def _fmt(x):
    return mpmath.nstr(x, 3)


# -------------------------------------------------------------------- numerics

@invariant("numerics", "pochhammer recursion")
def _pochhammer():
    worst = 0
    for a in ("-7/2", "-1/2", "0", "1/3", "2", "25/2"):
        a = numerics.to_real(a)
        for k in range(1, 51):
            lhs = numerics.pochhammer(a, k)
            rhs = numerics.pochhammer(a, k - 1) * (a + k - 1)
            worst = max(worst, relative_error(lhs, rhs))
    return worst <= _tol(4), f"max rel err {_fmt(worst)}"


@invariant("numerics", "gamma functional equation")
def _gamma():
    worst = 0
    for t in range(1, 201):
        x = mpmath.mpf(t) / 4
        worst = max(worst, relative_error(numerics.gamma(x + 1), x * numerics.gamma(x)))
    return worst <= _tol(4), f"max rel err {_fmt(worst)}"


def _exported_sample():
    p = SobolevParams("7/10", "1", 1)
    return [
        gegenbauer.norm_sq("7/10", 37),
        gegenbauer.derivative_at_endpoint("7/10", 37, 2),
        sobolev.sobolev_norm_sq(p, 30),
        sobolev.q_deriv_at_one(p, 30, 0),
        spectral.eigenvalue_sequence(p, 30).lambda_tilde[-1],
        asymptotics.bessel_j("7/10", 13),
        asymptotics.phi("7/10", 1, 5),
    ]


@invariant("numerics", "precision doubling")
def _doubling():
    base = _exported_sample()
    with mpmath.workdps(2 * mpmath.mp.dps):
        fine = _exported_sample()
    worst = max(relative_error(a, b) for a, b in zip(base, fine))
    return worst < _tol(8), f"max rel change {_fmt(worst)}"


# ------------------------------------------------------------------ gegenbauer

@invariant("gegenbauer", "parity")
def _parity():
    worst = 0
    for a in ALPHAS:
        for n in range(0, 121, 7):
            for x in ("1/7", "3/5", "99/100"):
                x = numerics.to_real(x)
                v = gegenbauer.evaluate(a, n, x)
                w = gegenbauer.evaluate(a, n, -x)
                worst = max(worst, abs(w - (-1) ** n * v))
    return worst == 0, f"max |C(-x) - (-1)^n C(x)| = {_fmt(worst)}"


@invariant("gegenbauer", "endpoint derivative growth")
def _deriv_growth():
    bad = []
    for a in ALPHAS:
        for k in range(5):
            r = certify.endpoint_derivative_report(a, k, (100, 1000, 10000))
            if not r.monotone():
                bad.append((a, k))
    return not bad, f"non-monotone: {bad}" if bad else "monotone for all alpha, k <= 4"


@invariant("gegenbauer", "norm asymptotics")
def _norm_asym():
    bad = [a for a in ALPHAS if not certify.norm_asymptotic_report(a, (100, 1000, 10000)).monotone()]
    return not bad, f"non-monotone: {bad}" if bad else "monotone for all alpha"


@invariant("gegenbauer", "derivative vs finite difference")
def _finite_difference():
    h = mpmath.mpf(10) ** (-(mpmath.mp.dps // 3))
    worst = 0
    for a in ALPHAS:
        for n in (3, 10, 31):
            for t in range(-9, 10, 2):
                x = mpmath.mpf(t) / 10
                fd = (gegenbauer.evaluate(a, n, x + h) - gegenbauer.evaluate(a, n, x - h)) / (2 * h)
                exact = gegenbauer.derivative_shifted_eval(a, n, 1, x)
                worst = max(worst, relative_error(fd, exact))
    return worst < h, f"max rel err {_fmt(worst)}"


# --------------------------------------------------------------------- kernels

@invariant("kernels", "parity split")
def _kernel_split():
    for a in ALPHAS:
        for n in (0, 1, 5, 12):
            for j, k in ((0, 0), (1, 2), (2, 0)):
                for y in (1, -1):
                    parts = [kernel_value(KernelQuery(a, n, j, k, y, par)) for par in ("all", "even", "odd")]
                    if parts[0] != parts[1] + parts[2]:
                        return False, f"alpha={a} n={n} (j,k)=({j},{k}) y={y}"
    return True, "exact on all queries"


@invariant("kernels", "order symmetry")
def _kernel_symmetry():
    for a in ALPHAS:
        for n in (3, 8, 20):
            for j, k in ((0, 1), (0, 2), (1, 2)):
                if kernel_value(KernelQuery(a, n, j, k)) != kernel_value(KernelQuery(a, n, k, j)):
                    return False, f"alpha={a} n={n} (j,k)=({j},{k})"
    return True, "exact"


@invariant("kernels", "kernel limits")
def _kernel_limits():
    bad = []
    for a in ALPHAS:
        for k in range(3):
            for s in range(k, 3):
                r = certify.kernel_limit_report(a, k, s, SCHEDULE)
                if not (r.monotone() and r.terminal_error < mpmath.mpf("0.01")):
                    bad.append((a, k, s, _fmt(r.terminal_error)))
    return not bad, f"failures: {bad}" if bad else "monotone, below 1% at n=4000"


@invariant("kernels", "incremental consistency")
def _incremental():
    for a in ALPHAS:
        acc = KernelAccumulator(a, (0, 1))
        for n in range(30):
            acc.extend_to(n)
            for par in ("all", "even", "odd"):
                if acc.value(0, 1, par) != kernel_value(KernelQuery(a, n, 0, 1, 1, par)):
                    return False, f"alpha={a} n={n} parity={par}"
    return True, "exact for n < 30"


# --------------------------------------------------------------------- sobolev

@invariant("sobolev", "orthogonality")
def _orthogonality():
    worst = 0
    for p in REDUCED_GRID:
        Qs = [sobolev.sobolev_polynomial(p, n) for n in range(21)]
        norms = [sobolev.sobolev_norm_sq(p, n) for n in range(21)]
        for m in range(21):
            for n in range(m + 1, 21):
                v = abs(sobolev.sobolev_inner(p, Qs[m], Qs[n])) / mpmath.sqrt(norms[m] * norms[n])
                worst = max(worst, v)
    return worst <= _tol(10), f"max normalised inner product {_fmt(worst)}"


@invariant("sobolev", "triple route")
def _triple():
    worst = 0
    for p in REDUCED_GRID:
        family = sobolev.gram_schmidt_family(p, 16)
        for n in range(2 * p.j + 2, 17):
            kern = sobolev.sobolev_polynomial(p, n)
            comp = sobolev.compact_connection(p, n).reconstruct()
            worst = max(worst, max_coefficient_error(kern, family[n]), max_coefficient_error(comp, family[n]))
    return worst <= _tol(8), f"max coefficient error {_fmt(worst)}"


@invariant("sobolev", "coefficient parity")
def _sob_parity():
    for p in REDUCED_GRID:
        for n in range(25):
            Q = sobolev.sobolev_polynomial(p, n)
            if any(c != 0 for i, c in enumerate(Q.coeffs) if (i - n) % 2):
                return False, f"{p.as_dict()} n={n}"
    return True, "only matching-parity coefficients are nonzero"


def _sweep_check(pick, bound):
    bad = []
    for p in REDUCED_GRID:
        reps = certify.sobolev_sweep_reports(p, SCHEDULE)
        for key, r in pick(p, reps):
            if not r.monotone() or (bound is not None and r.terminal_error > bound):
                bad.append((str(p.alpha), str(p.M), p.j, key, _fmt(r.terminal_error)))
    return not bad, f"failures: {bad}" if bad else "monotone and within tolerance"


@invariant("sobolev", "endpoint derivative ratios")
def _prop3():
    return _sweep_check(lambda p, reps: [(k, reps[("ratio", k)]) for k in range(p.j + 2)], mpmath.mpf("0.01"))


@invariant("sobolev", "norm ratio")
def _prop4():
    return _sweep_check(lambda p, reps: [("norm", reps["norm"])], mpmath.mpf("0.005"))


@invariant("sobolev", "compact coefficients limits")
def _prop6():
    bad = []
    for p in REDUCED_GRID:
        for r in certify.gamma_reports(p, SCHEDULE):
            if not r.monotone():
                bad.append((str(p.alpha), str(p.M), p.j, r.extras["index"]))
    return not bad, f"non-monotone: {bad}" if bad else "monotone for every i <= j+1"


# -------------------------------------------------------------------- spectral

@invariant("spectral", "q_nn parity shortcut")
def _qnn():
    for a in ALPHAS:
        for j in (0, 1, 2):
            for n in range(1, 61):
                if relative_error(spectral.q_nn(a, j, n), spectral.q_nn_parity(a, j, n)) > _tol(2):
                    return False, f"alpha={a} j={j} n={n}"
    return True, "agree for n <= 60"


@invariant("spectral", "mu growth")
def _mu():
    bad = []
    for a in ALPHAS:
        for j in (0, 1, 2):
            for r in certify.mu_reports(a, j, SCHEDULE):
                if not (r.monotone() and r.terminal_error < mpmath.mpf("0.015")):
                    bad.append((a, j, r.extras["parity"], _fmt(r.terminal_error)))
    return not bad, f"failures: {bad}" if bad else "monotone, below 1.5%"


@invariant("spectral", "eigenvalue growth")
def _lambda():
    bad = []
    for p in REDUCED_GRID:
        r = certify.lambda_report(p, SCHEDULE)
        if not (r.monotone() and r.terminal_error < mpmath.mpf("0.015")):
            bad.append((str(p.alpha), str(p.M), p.j, _fmt(r.terminal_error)))
    return not bad, f"failures: {bad}" if bad else "monotone, below 1.5%"


@invariant("spectral", "sup-norm boundedness")
def _sup_bounded():
    notes = []
    ok = True
    for p in (SobolevParams("-1/2", 1, 1), SobolevParams("7/10", 1, 0), SobolevParams("7/10", 1, 2)):
        r = certify.sobolev_sweep_reports(p, SCHEDULE)["internal"]
        sups = [spectral.sup_norm(p, n)[0] for n in (10, 100, 1000)]
        good = r.terminal_error < mpmath.mpf("0.01") and all(mpmath.isfinite(s) for s in sups)
        ok &= good
        notes.append(f"alpha={p.alpha} j={p.j}: ratio err {_fmt(r.terminal_error)}")
    p = SobolevParams("-3/4", 1, 0)
    scaled = [mpmath.mpf(n) ** (p.alpha + mpmath.mpf(1) / 2) * spectral.sup_norm(p, n)[0] for n in (100, 400, 1600)]
    bounded = max(scaled) <= 2 * scaled[0]
    ok &= bounded
    notes.append(f"alpha=-3/4 scaled sup {[_fmt(s) for s in scaled]}")
    return ok, "; ".join(notes)


@invariant("spectral", "scaled kernel Cauchy")
def _cauchy():
    # expected to fail for j > 0: at x = y = 1 the terms grow like
    # n^(2 alpha + 1 - r (4j + 2 alpha + 4)), which r0 + 0.2 does not beat
    notes = []
    ok = True
    for a, j in (("0", 0), ("7/10", 0), ("0", 1)):
        p = SobolevParams(a, 1, j)
        r = spectral.spectral_limit_constants(p)[1] + mpmath.mpf("0.2")
        sums = spectral.scaled_kernel_partial_sums(p, r, 2000, 1, 1)
        diffs = [abs(sums[2 * N] - sums[N]) for N in (250, 500, 1000)]
        factors = [d0 / d1 for d0, d1 in zip(diffs, diffs[1:])]
        ok &= all(f >= 2 for f in factors)
        notes.append(f"alpha={a} j={j}: factors {[_fmt(f) for f in factors]}")
    return ok, "; ".join(notes)


# ----------------------------------------------------------------- asymptotics

@invariant("asymptotics", "bessel precision doubling")
def _bessel_doubling():
    worst = 0
    for nu in ("0", "1/2", "27/10", "4"):
        for x in ("1/10", "3", "17", "60"):
            v = asymptotics.bessel_j(nu, x)
            with mpmath.workdps(2 * mpmath.mp.dps):
                w = asymptotics.bessel_j(nu, x)
            worst = max(worst, relative_error(v, w))
    return worst < _tol(8), f"max rel change {_fmt(worst)}"


@invariant("asymptotics", "j=0 closed form")
def _phi_closed():
    worst = 0
    for a in ALPHAS:
        a = numerics.to_real(a)
        for x in asymptotics.default_mh_grid(10, "1/2")[1:]:
            closed = numerics.gamma(a + 1) * (x / 2) ** (-a) * asymptotics.bessel_j(a + 2, x)
            worst = max(worst, abs(asymptotics.phi(a, 0, x) + closed))
    return worst <= _tol(10), f"max abs err {_fmt(worst)}"


@invariant("asymptotics", "Mehler-Heine convergence")
def _mh():
    grid = asymptotics.default_mh_grid(10, "1/2")
    notes = []
    ok = True
    for p in (SobolevParams("-1/2", "1/10", 0), SobolevParams("7/10", 10, 1), SobolevParams("2", 1, 2)):
        errs = [asymptotics.mh_error(p, n, grid) for n in (100, 400, 1600)]
        factors = [e0 / e1 for e0, e1 in zip(errs, errs[1:])]
        cos_gap = max(abs(a[1] - b[1]) for a, b in zip(asymptotics.mh_table(p, 1600, grid),
                                                       asymptotics.mh_table(p, 1600, grid, "cos")))
        ok &= all(f >= mpmath.mpf("1.8") for f in factors) and cos_gap < errs[-1]
        notes.append(f"alpha={p.alpha} j={p.j}: factors {[_fmt(f) for f in factors]} cos gap {_fmt(cos_gap)}")
    return ok, "; ".join(notes)


# ----------------------------------------------------------------------- zeros

@invariant("zeros", "count and simplicity")
def _zero_count():
    h = mpmath.mpf(10) ** (-(mpmath.mp.dps // 2))
    small = mpmath.mpf(10) ** (-(mpmath.mp.dps // 3))
    for p in REDUCED_GRID:
        for n in (1, 2, 7, 12, 20):
            rep = zeros.polynomial_zeros(p, n)
            Q = sobolev.sobolev_polynomial(p, n)
            for z in rep.zeros:
                lo, hi = gegenbauer.expansion_eval(Q, z - h), gegenbauer.expansion_eval(Q, z + h)
                if abs(gegenbauer.expansion_eval(Q, z)) >= small or (lo > 0) == (hi > 0):
                    return False, f"{p.as_dict()} n={n} zero {_fmt(z)}"
    return True, "all zeros certified"


@invariant("zeros", "outside classification")
def _outside():
    flagged = []
    for p in REDUCED_GRID:
        for n in range(2 * p.j + 2, 21):
            rep = zeros.polynomial_zeros(p, n)
            if p.j == 0 and rep.outside_count != 0:
                return False, f"{p.as_dict()} n={n}: {rep.outside_count} outside"
            if p.j > 0 and rep.outside_count != 2:
                if not rep.pre_asymptotic:
                    return False, f"{p.as_dict()} n={n}: {rep.outside_count} outside with Q_n(1) < 0"
                flagged.append((str(p.alpha), str(p.M), p.j, n))
    return True, f"pre-asymptotic flags: {flagged}" if flagged else "no exceptions"


@invariant("zeros", "scaled convergence")
def _scaled():
    # expected to fail for alpha = 7/10: n arccos(s) carries an offset y_i (alpha + 1/2)/n
    bad, worst = [], {}
    for a in ("-1/2", "7/10"):
        for j in (0, 1):
            reps = [zeros.scaled_zero_report(SobolevParams(a, 1, j), n, 5) for n in (500, 1000, 2000)]
            errs = [r.errors for r in reps]
            mono = all(errs[t + 1][i] < errs[t][i] for t in range(2) for i in range(5))
            worst[(a, j)] = _fmt(max(errs[-1]))
            if not mono or max(errs[-1]) >= mpmath.mpf("0.01"):
                bad.append((a, j))
    return not bad, f"max error at n=2000 {worst}" + (f"; failing {bad}" if bad else "")


@invariant("zeros", "exterior collapse")
def _exterior():
    p = SobolevParams("7/10", 1, 1)
    dist = [zeros.exterior_zero(p, n) - 1 for n in (500, 1000, 2000)]
    return all(b < a for a, b in zip(dist, dist[1:])), f"distances {[_fmt(d) for d in dist]}"


# ------------------------------------------------------------------------- cli

@invariant("cli", "determinism")
def _determinism():
    from .cli import main
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        main(["sobolev", "--alpha", "7/10", "--m", "1", "--j", "1", "--n", "9", "--format", "json"], stdout=buf)
        outs.append(buf.getvalue())
    return outs[0] == outs[1], "byte-identical" if outs[0] == outs[1] else "outputs differ"


def run_checks(select=None, progress=None):
    """Run registered checks, optionally only those whose module is in ``select``."""
    results = []
    for module, name, fn in _REGISTRY:
        if select and module not in select:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = CheckResult(module, name, bool(ok), detail, time.perf_counter() - t0)
        results.append(res)
        if progress is not None:
            progress(res)
    return results
