"""Command-line front end: ``gsop <command> [options]``.

Every command builds a table (params, columns, rows) and writes it as CSV
or JSON.  Numbers are written as decimal strings at the working precision.
Exit codes: 0 success, 1 domain or I/O error, 2 usage error, 3 failed
``verify`` invariant.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import mpmath

from . import asymptotics, gegenbauer, kernels, sobolev, spectral, zeros
from .errors import GsopError
from .numerics import PrecisionConfig, to_real, working_precision


@dataclass
class Table:
    columns: list
    rows: list = field(default_factory=list)
    params: dict = field(default_factory=dict)


def _text(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, mpmath.mpf):
        return mpmath.nstr(value, mpmath.mp.dps)
    return _text(mpmath.mpf(value))


def render(table, fmt):
    """Serialise a table to a string (CSV or JSON)."""
    rows = [[_text(v) for v in row] for row in table.rows]
    if fmt == "json":
        doc = {"params": {k: _text(v) for k, v in table.params.items()},
               "columns": list(table.columns), "rows": rows}
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    writer.writerows(rows)
    return buf.getvalue()


def emit(table, fmt="csv", path=None, stdout=None):
    """Write the table to ``path`` (UTF-8) or to stdout; returns bytes written."""
    text = render(table, fmt)
    if path is None or path == "-":
        (stdout or sys.stdout).write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return len(text.encode("utf-8"))


# ----------------------------------------------------------------- arguments

def _real(text):
    # validated here, converted later under the requested precision
    try:
        to_real(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc
    return text


REAL_ARGS = ("alpha", "m", "x", "y", "r", "x_max", "x_step")


def _n_range(text):
    try:
        a, b = (int(t) for t in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a:b with integers, got {text!r}") from exc
    if a > b:
        raise argparse.ArgumentTypeError(f"n-range start {a} exceeds end {b}")
    return a, b


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=_real, default="0", help="Gegenbauer parameter (> -1)")
    common.add_argument("--m", type=_real, default="1", help="mass M >= 0")
    common.add_argument("--j", type=int, default=0, help="derivative order of the discrete part")
    grp = common.add_mutually_exclusive_group()
    grp.add_argument("--n", type=int, help="degree")
    grp.add_argument("--n-range", type=_n_range, help="degree range a:b (inclusive)")
    common.add_argument("--precision", type=int, help="working digits (overrides GSOP_PRECISION)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", help="output file (default stdout)")

    ap = argparse.ArgumentParser(prog="gsop", description="Discrete Gegenbauer-Sobolev orthogonal polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gegenbauer", parents=[common], help="classical quantities of C_n^(alpha)")
    p.add_argument("--x", type=_real, help="also evaluate C_n at x")
    p.add_argument("--k", type=int, default=0, help="derivative order at x = 1")

    p = sub.add_parser("sobolev", parents=[common], help="coefficients of Q_n in the C^(alpha) basis")
    p.add_argument("--route", choices=("kernel", "gram", "compact"), default="kernel")

    p = sub.add_parser("kernel", parents=[common], help="kernel K_n^(j,k)(1, y)")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--y", type=int, choices=(1, -1), default=1)
    p.add_argument("--parity", choices=("all", "even", "odd"), default="all")

    sub.add_parser("eigenvalues", parents=[common], help="mu_n, lambda~_n and the scaled growth")
    sub.add_parser("gamma", parents=[common], help="compact connection coefficients and their limits")

    p = sub.add_parser("mehler-heine", parents=[common], help="Q_n near x = 1 against the limit function")
    p.add_argument("--x-max", type=_real, default="10")
    p.add_argument("--x-step", type=_real, default="1/10")
    p.add_argument("--form", choices=("algebraic", "cos"), default="algebraic")

    p = sub.add_parser("zeros", parents=[common], help="real zeros of Q_n")
    p.add_argument("--scaled-count", type=int, help="report the largest scaled zeros against their limits")

    p = sub.add_parser("r0", parents=[common], help="slope-ratio estimate of r0")
    p.add_argument("--points", type=int, default=7, help="log-spaced degrees in the n-range")

    p = sub.add_parser("kernel-sum", parents=[common], help="scaled reproducing-kernel partial sums")
    p.add_argument("--r", type=_real, required=True)
    p.add_argument("--x", type=_real, default="1")
    p.add_argument("--y", type=_real, default="1")

    p = sub.add_parser("verify", parents=[common], help="run the reduced invariant suite")
    p.add_argument("--module", action="append", help="restrict to a module (repeatable)")
    return ap


def _degrees(args, default=None):
    if args.n_range is not None:
        return list(range(args.n_range[0], args.n_range[1] + 1))
    if args.n is not None:
        return [args.n]
    if default is not None:
        return default
    raise GsopError("this command needs --n or --n-range")


def _single_n(args):
    if args.n is None:
        raise GsopError("this command needs --n")
    return args.n


def _params(args):
    return sobolev.SobolevParams(args.alpha, args.m, args.j)


# ------------------------------------------------------------------ commands

def cmd_gegenbauer(args):
    a = gegenbauer.check_alpha(args.alpha)
    cols = ["n", "eigenvalue", "leading_coefficient", "norm_sq", f"derivative_{args.k}_at_1"]
    if args.x is not None:
        cols.append("value_at_x")
    t = Table(cols, params={"alpha": a, "k": args.k, "x": args.x})
    for n in _degrees(args):
        q = gegenbauer.classical_quantities(a, n)
        row = [n, q.lambda_n, q.k_n, q.norm_sq, gegenbauer.derivative_at_endpoint(a, n, args.k)]
        if args.x is not None:
            row.append(gegenbauer.evaluate(a, n, args.x))
        t.rows.append(row)
    return t


def cmd_sobolev(args):
    p = _params(args)
    n = _single_n(args)
    if args.route == "kernel":
        Q = sobolev.sobolev_polynomial(p, n)
    elif args.route == "gram":
        Q = sobolev.gram_schmidt_oracle(p, n)
    else:
        Q = sobolev.compact_connection(p, n).reconstruct()
    t = Table(["index", "coefficient"], params={**p.as_dict(), "n": n, "route": args.route})
    t.rows = [[i, c] for i, c in enumerate(Q.coeffs)]
    return t


def cmd_kernel(args):
    a = gegenbauer.check_alpha(args.alpha)
    t = Table(["n", "value"], params={"alpha": a, "j": args.j, "k": args.k, "y": args.y, "parity": args.parity})
    for n in _degrees(args):
        t.rows.append([n, kernels.kernel_value(kernels.KernelQuery(a, n, args.j, args.k, args.y, args.parity))])
    return t


def cmd_eigenvalues(args):
    p = _params(args)
    ns = _degrees(args)
    seq = spectral.eigenvalue_sequence(p, max(ns))
    expo = spectral.growth_exponent(p)
    t = Table(["n", "mu", "lambda_tilde", "lambda_tilde_scaled"], params={**p.as_dict(), "exponent": expo})
    for n in ns:
        lam = seq.lambda_tilde[n]
        t.rows.append([n, seq.mu[n], lam, lam / mpmath.mpf(n) ** expo if n > 0 else None])
    return t


def cmd_gamma(args):
    p = _params(args)
    n = _single_n(args)
    conn = sobolev.compact_connection(p, n)
    lim = sobolev.gamma_limits(p.alpha, p.j).values
    t = Table(["i", "gamma_n_i", "gamma_i"], params={**p.as_dict(), "n": n})
    t.rows = [[i, g, lim[i]] for i, g in enumerate(conn.gammas)]
    return t


def cmd_mehler_heine(args):
    p = _params(args)
    n = _single_n(args)
    if args.x_step <= 0:
        raise GsopError("--x-step must be positive")
    grid = asymptotics.default_mh_grid(args.x_max, args.x_step)
    t = Table(["x", "q_scaled", "phi", "error"], params={**p.as_dict(), "n": n, "form": args.form})
    t.rows = [list(r) for r in asymptotics.mh_table(p, n, grid, args.form)]
    return t


def cmd_zeros(args):
    p = _params(args)
    n = _single_n(args)
    if args.scaled_count:
        rep = zeros.scaled_zero_report(p, n, args.scaled_count)
        t = Table(["i", "zero", "scaled", "target", "error", "shifted_error"],
                  params={**p.as_dict(), "n": n, "largest_zero": rep.largest_zero})
        used = rep.zeros[1:] if p.j == 0 else rep.zeros
        for i, (z, s, y, e) in enumerate(zip(used, rep.scaled, rep.targets, rep.shifted_errors), start=1):
            t.rows.append([i, z, s, y, abs(s - y), e])
        return t
    rep = zeros.polynomial_zeros(p, n)
    t = Table(["index", "zero", "outside", "scaled"],
              params={**p.as_dict(), "n": n, "outside_count": rep.outside_count,
                      "pre_asymptotic": rep.pre_asymptotic})
    for i, z in enumerate(rep.zeros):
        scaled = n * mpmath.acos(z) if 0 < z < 1 else None
        t.rows.append([i, z, abs(z) > 1, scaled])
    return t


def _log_grid(a, b, points):
    if a < 2:
        raise GsopError("r0 needs degrees >= 2")
    if points < 2 or a == b:
        return [a, b] if a != b else [a]
    ratio = (b / a) ** (1 / (points - 1))
    return sorted({int(round(a * ratio ** k)) for k in range(points)})


def cmd_r0(args):
    p = _params(args)
    if args.n_range is not None:
        ns = _log_grid(args.n_range[0], args.n_range[1], args.points)
    else:
        ns = _degrees(args, default=[500, 707, 1000, 1414, 2000, 2828, 4000])
    rep = spectral.r0_estimate(p, ns)
    ex = rep.extras
    t = Table(["n", "log_ratio", "sup_norm", "sobolev_norm_sq", "lambda_tilde"],
              params={**p.as_dict(), "target": rep.target, "estimate": rep.extrapolated,
                      "error": abs(rep.extrapolated - rep.target),
                      "log_sup_slope": ex["log_sup_slope"], "log_lambda_slope": ex["log_lambda_slope"],
                      "raw_sup_slope": ex["raw_sup_slope"]})
    for i, n in enumerate(rep.n_values):
        t.rows.append([n, rep.scaled_values[i], ex["sup_norms"][i], ex["sobolev_norms_sq"][i], ex["lambda_tilde"][i]])
    return t


def cmd_kernel_sum(args):
    p = _params(args)
    N = _single_n(args)
    sums = spectral.scaled_kernel_partial_sums(p, args.r, N, args.x, args.y)
    t = Table(["N", "partial_sum"], params={**p.as_dict(), "r": args.r, "x": args.x, "y": args.y})
    t.rows = [[k, s] for k, s in enumerate(sums)]
    return t


def cmd_verify(args):
    from .verify import run_checks

    def progress(res):
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.module}: {res.name} ({res.seconds:.1f}s) {res.detail}", file=sys.stderr)

    results = run_checks(args.module, progress)
    t = Table(["module", "invariant", "status", "detail"], params={"digits": mpmath.mp.dps})
    t.rows = [[r.module, r.name, "pass" if r.ok else "fail", r.detail] for r in results]
    t.failed = [f"{r.module}: {r.name}" for r in results if not r.ok]
    return t


COMMANDS = {
    "gegenbauer": cmd_gegenbauer,
    "sobolev": cmd_sobolev,
    "kernel": cmd_kernel,
    "eigenvalues": cmd_eigenvalues,
    "gamma": cmd_gamma,
    "mehler-heine": cmd_mehler_heine,
    "zeros": cmd_zeros,
    "r0": cmd_r0,
    "kernel-sum": cmd_kernel_sum,
    "verify": cmd_verify,
}


def main(argv=None, stdout=None):
    args = _parser().parse_args(argv)
    try:
        config = PrecisionConfig.from_env(args.precision)
        with working_precision(config):
            for name in REAL_ARGS:
                if isinstance(getattr(args, name, None), str):
                    setattr(args, name, to_real(getattr(args, name)))
            table = COMMANDS[args.command](args)
            emit(table, args.format, args.output, stdout)
    except (GsopError, ValueError, ZeroDivisionError) as exc:
        print(f"gsop {args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gsop {args.command}: cannot write output: {exc}", file=sys.stderr)
        return 1
    failed = getattr(table, "failed", None)
    if failed:
        print("gsop verify: failing invariants: " + ", ".join(failed), file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
