"""Command-line front end; every subcommand emits CSV.

Numeric output is rendered at 12 significant digits with infinities as the
literal ``inf``, so emitted files parse and re-emit byte-identically.
Exit status: 0 on success, 1 when a mathematical check fails (bound or
identity violation, failed verification, Kraft violation), 2 on usage errors
including malformed input files.
"""

from __future__ import annotations

import functools
import os
import sys
from dataclasses import replace
from typing import Optional

import click
import numpy as np

from .bounds import CURVE_MEASURES, bound_curve
from .coding import CodeSpec, l1_bounds, redundancy_sweep, shannon_code
from .config import DEFAULT_TOLS
from .dist import FiniteDist
from .errors import (
    BoundViolationError,
    DistFileError,
    DistributionError,
    GeneratorError,
    KraftViolationError,
)
from .fdiv import f_divergence
from .generators import GENERATOR_ALIASES, get_generator
from .jensen import sandwich as eval_sandwich
from .oracle import ORACLE_MEASURES, grid_verify
from .textio import fmt_g12, read_dist_file, read_lengths_file

_ENV_SEED = "DIVBOUND_SEED"


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _linear_grid(spec: str) -> list[float]:
    """Parse 'start:step:stop' into an inclusive, strictly increasing grid."""
    try:
        start, step, stop = (float(x) for x in spec.split(":"))
    except ValueError:
        raise click.BadParameter(f"expected start:step:stop, got {spec!r}") from None
    if step <= 0.0 or stop < start:
        raise click.BadParameter(f"grid {spec!r} is empty or decreasing")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(n)]


def _log_grid(spec: str) -> list[float]:
    """Parse 'start:stop:npoints' into a log-spaced grid."""
    parts = spec.split(":")
    try:
        start, stop = float(parts[0]), float(parts[1])
        npoints = int(parts[2])
    except (ValueError, IndexError):
        raise click.BadParameter(f"expected start:stop:npoints, got {spec!r}") from None
    if start <= 0.0 or stop < start or npoints < 1:
        raise click.BadParameter(f"log grid {spec!r} is invalid")
    return [float(x) for x in np.geomspace(start, stop, npoints)]


def _mapped_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except DistFileError as exc:
            raise click.UsageError(str(exc)) from exc
        except DistributionError as exc:
            raise click.UsageError(str(exc)) from exc
        except (KraftViolationError, BoundViolationError, GeneratorError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


@click.group()
def main():
    """Divergences, tight bounds, and redundancy bound comparisons as CSV."""


@main.command()
@click.option(
    "--divergence",
    "name",
    required=True,
    type=click.Choice(sorted(GENERATOR_ALIASES)),
    help="Which f-divergence to evaluate.",
)
@click.option("--p", "p_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--q", "q_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output", type=click.Path(dir_okay=False), help="Write CSV here instead of stdout.")
@click.option(
    "--tol-normalization",
    type=float,
    default=DEFAULT_TOLS.normalization,
    show_default=True,
    help="Allowed |sum - 1| in input files before renormalizing.",
)
@_mapped_errors
def divergence(name, p_path, q_path, output, tol_normalization):
    """Evaluate one f-divergence between two distribution files."""
    tols = replace(DEFAULT_TOLS, normalization=tol_normalization)
    p = read_dist_file(p_path, tols=tols)
    q = read_dist_file(q_path, tols=tols)
    value = f_divergence(get_generator(name), p, q)
    _emit(f"measure,value\n{name},{fmt_g12(value)}\n", output)


@main.command()
@click.option(
    "--measure",
    required=True,
    type=click.Choice(sorted(CURVE_MEASURES)),
    help="Which closed-form bound family to tabulate.",
)
@click.option("--grid", required=True, help="Grid as start:step:stop, e.g. 0.05:0.05:0.95.")
@click.option("--output", type=click.Path(dir_okay=False))
@_mapped_errors
def bounds(measure, grid, output):
    """Tabulate a closed-form bound over a grid of total variation values."""
    curve = bound_curve(measure, _linear_grid(grid))
    _emit(curve.to_csv(), output)


@main.command()
@click.option(
    "--f",
    "name",
    required=True,
    type=click.Choice(sorted(GENERATOR_ALIASES)),
    help="Generator f; g(t) = -t f(t) must be convex (certified: dual_kl, dual_chi2).",
)
@click.option("--p", "p_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--q", "q_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output", type=click.Path(dir_okay=False))
@_mapped_errors
def sandwich(name, p_path, q_path, output):
    """Evaluate the three-term sandwich inequality on one pair."""
    p = read_dist_file(p_path)
    q = read_dist_file(q_path)
    r = eval_sandwich(get_generator(name), p, q)
    header = "r_min,r_max,left,middle,right,chi2"
    row = ",".join(
        fmt_g12(v) for v in (r.r_min, r.r_max, r.left, r.middle, r.right, r.chi2)
    )
    _emit(f"{header}\n{row}\n", output)


_REPORT_COLUMNS = (
    "avg_length,entropy_d,redundancy,kraft_sum,kl_pq,kl_qp,jeffreys_val,"
    "actual_l1,bound_csiszar,bound_tightened,bound_jeffreys,delta_nonneg"
)


@main.command()
@click.option("--dist", "dist_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--base", "base_d", required=True, type=int, help="Code alphabet size d >= 2.")
@click.option(
    "--lengths",
    "lengths_path",
    type=click.Path(exists=True, dir_okay=False),
    help="Optional codeword lengths file; defaults to the Shannon lengths for --dist.",
)
@click.option(
    "--tol-search",
    type=float,
    default=DEFAULT_TOLS.search,
    show_default=True,
    help="Residual tolerance for the curve inversions behind the bounds.",
)
@click.option("--output", type=click.Path(dir_okay=False))
@_mapped_errors
def sourcecode(dist_path, base_d, lengths_path, tol_search, output):
    """Redundancy, divergence identities, and L1 bounds for one source/code pair."""
    p = read_dist_file(dist_path)
    if lengths_path is None:
        code = shannon_code(p, base_d)
    else:
        table = read_lengths_file(lengths_path)
        missing = [x for x in p.labels if x not in table]
        extra = [x for x in table if x not in p.labels]
        if missing or extra:
            raise DistributionError(
                f"lengths file does not match the source alphabet "
                f"(missing {missing!r}, extra {extra!r})"
            )
        code = CodeSpec(p.labels, tuple(table[x] for x in p.labels), base_d)
    rep = l1_bounds(p, code, tol=tol_search)
    row = [
        fmt_g12(v)
        for v in (
            rep.avg_length,
            rep.entropy_d,
            rep.redundancy,
            rep.kraft_sum,
            rep.kl_pq,
            rep.kl_qp,
            rep.jeffreys_val,
            rep.actual_l1,
            rep.bound_csiszar,
            rep.bound_tightened,
        )
    ]
    row.append("" if rep.bound_jeffreys is None else fmt_g12(rep.bound_jeffreys))
    row.append("true" if rep.delta_nonneg else "false")
    _emit(f"{_REPORT_COLUMNS}\n{','.join(row)}\n", output)


@main.command(name="sourcecode-sweep")
@click.option(
    "--grid",
    required=True,
    help="Log-spaced grid of redundancy values (nats) as start:stop:npoints.",
)
@click.option("--output", type=click.Path(dir_okay=False))
@_mapped_errors
def sourcecode_sweep(grid, output):
    """Compare the three L1 bounds across redundancy values x = Delta log d."""
    xs = _log_grid(grid)
    cs, ti, je = redundancy_sweep(xs)
    lines = ["delta_log_d,bound_csiszar,bound_tightened,bound_jeffreys"]
    for x, a, b, c in zip(xs, cs, ti, je):
        lines.append(f"{fmt_g12(x)},{fmt_g12(a)},{fmt_g12(b)},{fmt_g12(c)}")
    _emit("\n".join(lines) + "\n", output)


_VERIFY_CHOICES = sorted(ORACLE_MEASURES) + ["bhattacharyya"]


@main.command()
@click.option(
    "--measure",
    required=True,
    type=click.Choice(_VERIFY_CHOICES),
    help="Measure to verify; 'bhattacharyya' runs both directions.",
)
@click.option("--grid", required=True, help="Grid as start:step:stop.")
@click.option("--samples", default=1000, show_default=True, type=int, help="Pairs per support size.")
@click.option(
    "--seed",
    type=int,
    default=None,
    help=f"RNG seed; falls back to ${_ENV_SEED}, then 0.",
)
@click.option("--gap-threshold", type=float, default=None, help="Fail if the empirical gap exceeds this.")
@click.option(
    "--tol-tv-match",
    type=float,
    default=DEFAULT_TOLS.tv_match,
    show_default=True,
    help="Total variation matching tolerance in the sampler.",
)
@click.option("--output", type=click.Path(dir_okay=False))
@_mapped_errors
def verify(measure, grid, samples, seed, gap_threshold, tol_tv_match, output):
    """Brute-force check of one tight bound over a grid; exit 1 on any failure."""
    if seed is None:
        seed = int(os.environ.get(_ENV_SEED, "0"))
    eps_grid = _linear_grid(grid)
    names = (
        ["bhattacharyya_lower", "bhattacharyya_upper"]
        if measure == "bhattacharyya"
        else [measure]
    )
    all_reports = []
    for name in names:
        try:
            _, _, reports = grid_verify(
                name,
                eps_grid,
                samples,
                seed=seed,
                gap_threshold=gap_threshold,
                tol=tol_tv_match,
            )
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
        all_reports.extend(reports)

    lines = ["measure,eps,closed_form,empirical_extreme,extremal_value,gap,violations,attained,passed"]
    for r in all_reports:
        lines.append(
            ",".join(
                (
                    r.measure,
                    fmt_g12(r.eps),
                    fmt_g12(r.closed_form),
                    fmt_g12(r.sample_extreme),
                    fmt_g12(r.extremal_value),
                    fmt_g12(r.gap),
                    str(r.violations),
                    "true" if r.attained else "false",
                    "true" if r.passed else "false",
                )
            )
        )
    _emit("\n".join(lines) + "\n", output)

    ok = all(r.passed for r in all_reports)
    rng_name = all_reports[0].rng_name if all_reports else "-"
    click.echo(
        f"verify {measure}: {len(all_reports)} check(s), {samples} samples/support, "
        f"seed {seed}, rng {rng_name}: {'PASS' if ok else 'FAIL'}",
        err=True,
    )
    if not ok:
        for r in all_reports:
            if not r.passed:
                click.echo(f"  {r.measure} at eps={fmt_g12(r.eps)}: {r.failure}", err=True)
                if r.witness is not None:
                    wp, wq = r.witness
                    click.echo(f"    witness P = {list(wp.mass)!r}", err=True)
                    click.echo(f"    witness Q = {list(wq.mass)!r}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
