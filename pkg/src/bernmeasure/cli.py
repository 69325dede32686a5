"""Command-line interface.

Every subcommand prints a table (CSV by default, ``--format json``).  Usage
errors exit with status 2, domain errors with status 1; ``verify`` exits 1
when some residual exceeds its tolerance.
"""

from __future__ import annotations

import cmath
import functools
import math
import sys

import click
import numpy as np

from . import corollary, entire_fn, hessenberg, legendre, measure_core, oracle, qpoly
from .entire_fn import EvalConfig
from .errors import BernoulliMeasureError
from .formatting import Table, parse_scalar


class Scalar(click.ParamType):
    name = "number"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_scalar(value)
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational, float or complex number", param, ctx)


class ScalarList(click.ParamType):
    name = "coefficients"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return [parse_scalar(v) for v in value.split(",")]
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a comma-separated list of numbers", param, ctx)


SCALAR = Scalar()

format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)


def emits_table(fn):
    """Render the returned table; turn domain errors into exit status 1."""

    @functools.wraps(fn)
    def wrapper(*args, fmt="csv", **kwargs):
        try:
            table = fn(*args, **kwargs)
        except BernoulliMeasureError as exc:
            raise click.ClickException(str(exc)) from exc
        click.echo(table.render(fmt), nl=False)
        return table

    return format_option(wrapper)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Integrals against the Bernoulli measure mu_p on [0, 1]."""


@main.command()
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--method", type=click.Choice(["recurrence", "det"]), default="recurrence", show_default=True)
@emits_table
def moments(p, n, method):
    """Moments J_0..J_N."""
    table = Table("moments", ["k", "J_k"])
    if method == "recurrence":
        values = measure_core.moments_recurrence(p, n).moments
    else:
        values = [hessenberg.moment_det(k, p) for k in range(n + 1)]
    for k, j in enumerate(values):
        table.add(k, j)
    return table


@main.command()
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--poly", type=ScalarList(), required=True, help="r0,r1,...,rN")
@click.option("--method", type=click.Choice(["moments", "det3", "det104"]), default="moments", show_default=True)
@emits_table
def integrate(p, poly, method):
    """Integral of r0 + r1 x + ... + rN x^N."""
    R = measure_core.Polynomial(poly)
    if method == "moments":
        value = measure_core.integrate_poly_via_moments(R, measure_core.moments_recurrence(p, R.degree))
    elif method == "det3":
        value = hessenberg.integrate_polynomial_det(R, p, hessenberg.MatrixForm.PASCAL)
    else:
        value = hessenberg.integrate_polynomial_det(R, p, hessenberg.MatrixForm.REGULARIZED)
    table = Table("integrate", ["value"])
    table.add(value)
    return table


def _config(tol, terms, depth, dps) -> EvalConfig:
    kwargs = {}
    if tol is not None:
        kwargs["product_tol"] = tol
    if terms is not None:
        kwargs["taylor_terms"] = terms
    if depth is not None:
        kwargs["reduce_depth"] = depth
    if dps is not None:
        kwargs["precision_digits"] = dps
    try:
        return EvalConfig(**kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


eval_options = [
    click.option("--tol", type=float, default=None, help="product truncation tolerance"),
    click.option("--terms", type=int, default=None, help="Taylor / log-series terms"),
    click.option("--depth", type=int, default=None, help="halvings for the reduce method"),
    click.option("--dps", type=int, default=None, help=f"working digits (default ${entire_fn.PRECISION_ENV_VAR} or 15)"),
]


def with_eval_options(fn):
    for opt in reversed(eval_options):
        fn = opt(fn)
    return fn


@main.command("eval")
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--omega", type=SCALAR, required=True)
@click.option(
    "--method", type=click.Choice(["product", "taylor", "reduce", "logseries"]), default="product", show_default=True
)
@with_eval_options
@emits_table
def eval_cmd(p, omega, method, tol, terms, depth, dps):
    """I_p(omega)."""
    cfg = _config(tol, terms, depth, dps)
    if method == "product":
        value = entire_fn.ip_product(p, omega, cfg)
    elif method == "taylor":
        value = entire_fn.ip_taylor(p, omega, cfg)
    elif method == "reduce":
        value = entire_fn.ip_reduce(p, omega, cfg)
    else:
        value = cmath.exp(qpoly.log_series_eval(p, omega, cfg.taylor_terms, cfg.precision_digits))
    table = Table("eval", ["value"])
    table.add(value)
    return table


@main.command()
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--k", "k", type=int, required=True)
@with_eval_options
@emits_table
def fourier(p, k, tol, terms, depth, dps):
    """Trigonometric Fourier coefficient I_p(2 pi i k)."""
    value = entire_fn.fourier_coefficient(p, k, _config(tol, terms, depth, dps))
    table = Table("fourier", ["k", "re", "im"])
    table.add(k, value.real, value.imag)
    return table


@main.command("legendre")
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@emits_table
def legendre_cmd(p, n):
    """Coefficient of mu_p along the normalized shifted Legendre polynomial P_N."""
    c = legendre.legendre_coeff_det(p, n)
    table = Table("legendre", ["n", "exact", "normalizer", "value"])
    table.add(n, c.exact, f"1/sqrt({c.scale_squared})", c.value)
    return table


@main.command("qpoly")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--roots", is_flag=True, help="add the Sturm root certificate")
@emits_table
def qpoly_cmd(n, roots):
    """Coefficients of Q_1..Q_N in ascending powers of p."""
    columns = ["n", "coefficients"]
    if roots:
        columns += ["roots_in_unit_interval", "all_simple"]
    table = Table("qpoly", columns)
    for q in qpoly.q_sequence(n):
        cells = [q.index, " ".join(str(c) for c in q.coeffs)]
        if roots:
            cert = qpoly.root_certificate(q)
            cells += [cert.root_count_in_unit_interval, cert.all_simple]
        table.add(*cells)
    return table


@main.command("corollary")
@click.option("--which", type=click.Choice(["exp", "log", "pow"]), required=True)
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--omega", type=SCALAR, required=True)
@click.option("--alpha", type=SCALAR, default=None)
@click.option("--terms", type=click.IntRange(min=1), required=True)
@click.option("--route", type=click.Choice(["series", "det"]), default="series", show_default=True)
@emits_table
def corollary_cmd(which, p, omega, alpha, terms, route):
    """Truncated integrals of e^(wx), log(1 - wx) and (1 + wx)^alpha."""
    if which == "exp":
        fn = corollary.exp_integral_series if route == "series" else corollary.exp_integral_det
        value = fn(p, omega, terms)
    elif which == "log":
        fn = corollary.log_integral_series if route == "series" else corollary.log_integral_det
        value = fn(p, omega, terms)
    else:
        if alpha is None:
            raise click.UsageError("--alpha is required with --which pow")
        fn = corollary.power_integral_series if route == "series" else corollary.power_integral_det
        value = fn(p, omega, alpha, terms)
    table = Table("corollary", ["which", "route", "terms", "value"])
    table.add(which, route, terms, value)
    return table


def _parse_grid(text: str):
    if text == "default":
        return None
    points = []
    for item in text.split(";"):
        try:
            p, w = item.split(":")
            points.append((parse_scalar(p), parse_scalar(w)))
        except ValueError:
            raise click.BadParameter(f"grid point {item!r} is not of the form p:omega", param_hint="--grid")
    return points


@main.command()
@click.option(
    "--suite",
    type=click.Choice(["functional", "symmetry", "reciprocal", "split", "remark1", "all"]),
    default="all",
    show_default=True,
)
@click.option("--grid", default="default", show_default=True, help="'default' or 'p:omega;p:omega;...'")
@click.option("--reciprocal-terms", type=click.IntRange(min=1), default=30, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def verify(suite, grid, reciprocal_terms, fmt):
    """Residuals of the functional identities of I_p; exit 0 iff all pass."""
    suites = entire_fn.SUITES if suite == "all" else (suite,)
    checks = entire_fn.identity_report(suites, _parse_grid(grid), reciprocal_terms=reciprocal_terms)
    table = Table("verify", ["suite", "p", "omega", "residual", "tolerance", "status"])
    failed = False
    for c in checks:
        status = "skip" if c.skipped else ("pass" if c.ok else "fail")
        failed |= status == "fail"
        table.add(c.suite, c.p, c.omega, "" if c.skipped else c.residual, c.tolerance, status)
    click.echo(table.render(fmt), nl=False)
    sys.exit(1 if failed else 0)


def _integrand(spec: str, omega, alpha):
    """Vectorized integrand from ``x^k``, ``exp``, ``log1m`` or ``pow``."""
    if spec.startswith("x^"):
        try:
            k = int(spec[2:])
        except ValueError:
            raise click.BadParameter(f"{spec!r}: exponent must be an integer", param_hint="--f")
        return lambda x: x ** k, float(k) if k > 0 else 0.0
    w = complex(omega if omega is not None else (1 if spec == "exp" else 0.5))
    w = w.real if w.imag == 0 else w
    if spec == "exp":
        return (lambda x: np.exp(w * x)), abs(w) * math.exp(max(w.real if isinstance(w, complex) else w, 0))
    if spec == "log1m":
        if abs(w) >= 1:
            raise click.BadParameter("log1m needs |omega| < 1", param_hint="--omega")
        return (lambda x: np.log(1 - w * x)), abs(w) / (1 - abs(w))
    if spec == "pow":
        a = complex(alpha if alpha is not None else 0.5)
        a = a.real if a.imag == 0 else a
        if abs(w) >= 1:
            raise click.BadParameter("pow needs |omega| < 1", param_hint="--omega")
        return (lambda x: (1 + w * x) ** a), None
    raise click.BadParameter(f"unknown integrand {spec!r}", param_hint="--f")


oracle_f = click.option("--f", "f", required=True, help="x^k, exp, log1m or pow")


@main.command("oracle")
@oracle_f
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--depth", type=click.IntRange(min=0), required=True)
@click.option("--omega", type=SCALAR, default=None)
@click.option("--alpha", type=SCALAR, default=None)
@emits_table
def oracle_cmd(f, p, depth, omega, alpha):
    """Dyadic-cylinder midpoint sum."""
    fn, lip = _integrand(f, omega, alpha)
    r = oracle.dyadic_integrate(fn, p, depth, lipschitz=lip)
    table = Table("oracle", ["f", "depth", "value", "error_bound"])
    table.add(f, depth, r.value, r.error_bound)
    return table


@main.command("oracle-mc")
@oracle_f
@click.option("--p", "p", type=SCALAR, required=True)
@click.option("--samples", type=click.IntRange(min=2), required=True)
@click.option("--seed", type=int, required=True)
@click.option("--digits", type=click.IntRange(min=1), default=53, show_default=True)
@click.option("--omega", type=SCALAR, default=None)
@click.option("--alpha", type=SCALAR, default=None)
@emits_table
def oracle_mc_cmd(f, p, samples, seed, digits, omega, alpha):
    """Seeded Monte-Carlo estimate with standard error."""
    fn, _ = _integrand(f, omega, alpha)
    r = oracle.mc_integrate(fn, p, samples, seed, digits)
    table = Table("oracle-mc", ["f", "samples", "seed", "estimate", "std_error"])
    table.add(f, samples, seed, r.estimate, r.std_error)
    return table


if __name__ == "__main__":  # pragma: no cover
    main()
