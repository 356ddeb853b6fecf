"""Command-line entry point.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 workload guard.
SUMSETLAB_THREADS, when set, overrides --threads.
"""
from __future__ import annotations

import json
import os
import sys

import click

from . import __version__
from .core import EnumerationTooLargeError, IntSet, SumsetError, h_fold_sumset, multiset_count
from .core import representation_histogram, sumset_size
from .experiments import (
    EXHAUSTIVE_GUARD,
    ExperimentSpec,
    collision_summary,
    frequent_sizes,
    iter_sets,
    popular_sizes,
    popularity_study,
    run_collision_study,
    run_distribution,
)
from . import formats
from .ranges import RANGE_GUARD, OutOfHypothesisError, closed_form_range, complexity_bound
from .ranges import exhaustive_range
from .rng import DEFAULT_SEED
from .verify import CASES, run_case

EXIT_CHECK_FAILED = 1
EXIT_GUARD = 3

FORMATS = click.Choice(["table", "csv", "json"])


class GuardedGroup(click.Group):
    """Maps workload-guard errors to exit code 3 and other input errors to 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except EnumerationTooLargeError as exc:
            click.echo(f"error: {exc} (estimated job size {exc.estimate})", err=True)
            ctx.exit(EXIT_GUARD)
        except SumsetError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(2)


def _threads(value: int | None) -> int:
    env = os.environ.get("SUMSETLAB_THREADS")
    if env:
        return max(1, int(env))
    if value is None:
        return os.cpu_count() or 1
    return max(1, value)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _parse_seed(ctx, param, value):
    if value is None:
        return DEFAULT_SEED
    try:
        seed = int(value, 0)
    except ValueError:
        raise click.BadParameter(f"not an integer: {value!r}")
    if not 0 <= seed < 2**64:
        raise click.BadParameter("seed must be an unsigned 64-bit integer")
    return seed


def _parse_set(ctx, param, value):
    try:
        values = [int(v) for v in value.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")
    try:
        return IntSet.of(values)
    except SumsetError as exc:
        raise click.BadParameter(str(exc))


threads_option = click.option(
    "--threads", type=click.IntRange(min=1), default=None,
    help="Worker threads (default: available CPUs). Output does not depend on it.",
)
format_option = click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None,
                          help="Write to FILE instead of stdout.")
seed_option = click.option("--seed", callback=_parse_seed, default=None,
                           help=f"Sampling seed (default {DEFAULT_SEED:#x}).")


@click.group(cls=GuardedGroup)
@click.version_option(__version__, prog_name="sumsetlab")
def main():
    """Sumset sizes of finite sets of integers."""


@main.command("eval")
@click.option("--set", "A", required=True, callback=_parse_set, help="Comma-separated integers.")
@click.option("--h", type=click.IntRange(min=1), required=True)
@click.option("--elements", is_flag=True, help="Also print the elements of hA.")
@click.option("--histogram", is_flag=True, help="Print r_{A,h}(n) for every n in hA.")
@format_option
@out_option
def eval_cmd(A, h, elements, histogram, fmt, out):
    """Size (and optionally elements and representation counts) of hA."""
    size = sumset_size(A, h)
    top = multiset_count(h, len(A))
    record = {"set": list(A), "h": h, "k": len(A), "size": size, "max_size": top,
              "is_bh_set": size == top}
    if elements:
        record["elements"] = list(h_fold_sumset(A, h))
    if histogram:
        record["histogram"] = representation_histogram(A, h).counts
    if fmt == "json":
        if histogram:
            record["histogram"] = [{"n": n, "r": r} for n, r in sorted(record["histogram"].items())]
        _emit(json.dumps(record, indent=2), out)
        return
    lines = [f"size: {size}", f"h: {h}", f"k: {len(A)}", f"max_size: {top}",
             f"B_h set: {'yes' if size == top else 'no'}"]
    if elements:
        lines.append("elements: " + ",".join(map(str, record["elements"])))
    if histogram:
        lines.append("n,r")
        lines.extend(f"{n},{r}" for n, r in sorted(record["histogram"].items()))
    _emit("\n".join(lines) + "\n", out)


@main.command("range")
@click.option("--h", type=click.IntRange(min=1), required=True)
@click.option("--k", type=click.IntRange(min=2), required=True)
@click.option("--q", type=click.IntRange(min=1), default=None, help="Search window [0, q-1].")
@click.option("--use-bound", is_flag=True, help="Use the proof-grade window 4(8h)^(k-1).")
@click.option("--guard", type=click.IntRange(min=1), default=RANGE_GUARD, show_default=True)
@threads_option
@format_option
@out_option
def range_cmd(h, k, q, use_bound, guard, threads, fmt, out):
    """Achieved and missing sumset sizes over k-sets in a window."""
    if (q is None) == (not use_bound):
        raise click.UsageError("give exactly one of --q and --use-bound")
    if use_bound:
        try:
            q = complexity_bound(h, k)
        except OutOfHypothesisError as exc:
            raise click.UsageError(str(exc))
    if q < k:
        raise click.UsageError(f"--q must be at least k={k}")
    result = exhaustive_range(h, k, q, guard=guard, threads=_threads(threads))
    if fmt == "csv":
        _emit(formats.range_csv(result), out)
    elif fmt == "json":
        _emit(formats.range_json(result), out)
    else:
        cf = closed_form_range(h, k)
        lines = [
            f"h={h} k={k} window=[0,{q - 1}]",
            "achieved: " + " ".join(map(str, sorted(result.achieved))),
            "missing: " + " ".join(map(str, sorted(result.missing))),
            f"proof_grade: {str(result.proof_grade).lower()}",
        ]
        if cf is not None:
            agree = "agrees" if cf == result.achieved else "differs"
            lines.append(f"closed form: {' '.join(map(str, sorted(cf)))} ({agree})")
        _emit("\n".join(lines) + "\n", out)


def _spec(h, k, q, mode, n, seed) -> ExperimentSpec:
    if mode == "sampled" and n is None:
        raise click.UsageError("--mode sampled needs --n")
    try:
        return ExperimentSpec(h, k, q, mode, n if mode == "sampled" else None, seed)
    except SumsetError as exc:
        raise click.UsageError(str(exc))


experiment_options = [
    click.option("--h", type=click.IntRange(min=1), required=True),
    click.option("--k", type=click.IntRange(min=1), required=True),
    click.option("--q", type=click.IntRange(min=1), required=True),
    click.option("--mode", type=click.Choice(["exhaustive", "sampled"]), default="exhaustive",
                 show_default=True),
    click.option("--n", type=click.IntRange(min=1), default=None, help="Sample count."),
    seed_option,
    click.option("--guard", type=click.IntRange(min=1), default=EXHAUSTIVE_GUARD, show_default=True),
    threads_option,
    format_option,
    out_option,
]


def with_experiment_options(fn):
    for opt in reversed(experiment_options):
        fn = opt(fn)
    return fn


@main.command("distribution")
@with_experiment_options
@click.option("--threshold", type=float, default=1e-3, show_default=True,
              help="Report sizes above this share of the mass (table format).")
def distribution_cmd(h, k, q, mode, n, seed, guard, threads, fmt, out, threshold):
    """Distribution S(t) of |hA| over k-subsets of [0, q-1]."""
    spec = _spec(h, k, q, mode, n, seed)
    dist = run_distribution(spec, threads=_threads(threads), guard=guard)
    if fmt == "csv":
        _emit(formats.distribution_csv(dist), out)
    elif fmt == "json":
        _emit(formats.distribution_json(dist), out)
    else:
        lines = [f"total: {dist.total}", "t  S(t)"]
        lines += [f"{t}  {c}" for t, c in dist.table() if c]
        common = frequent_sizes(dist, threshold)
        lines.append(f"sizes above {threshold:g} of mass: " + " ".join(str(t) for t, _ in common))
        lines.append("mode: " + str(popular_sizes(dist, 1)[0][0]))
        _emit("\n".join(lines) + "\n", out)


def _parse_hrange(ctx, param, value):
    lo, sep, hi = value.partition("-")
    try:
        lo = int(lo)
        hi = int(hi) if sep else lo
    except ValueError:
        raise click.BadParameter(f"expected H or LO-HI, got {value!r}")
    if lo < 2 or hi < lo:
        raise click.BadParameter("h values must satisfy 2 <= LO <= HI")
    return range(lo, hi + 1)


@main.command("popular")
@click.option("--h-range", "hs", default="2-9", show_default=True, callback=_parse_hrange)
@click.option("--k", type=click.IntRange(min=2), default=4, show_default=True)
@click.option("--q", type=click.IntRange(min=2), default=10**4, show_default=True)
@click.option("--n", type=click.IntRange(min=1), default=10**5, show_default=True)
@seed_option
@threads_option
@format_option
@out_option
def popular_cmd(hs, k, q, n, seed, threads, fmt, out):
    """Top-h sumset sizes per h against the tetrahedral prediction."""
    if q < k:
        raise click.UsageError(f"--q must be at least k={k}")
    rows = popularity_study(hs, k=k, q=q, n_samples=n, seed=seed, threads=_threads(threads))
    if fmt == "csv":
        _emit(formats.popular_csv(rows, k, q, n, seed), out)
    elif fmt == "json":
        _emit(formats.popular_json(rows, k, q, n, seed), out)
    else:
        _emit(formats.popular_table(rows), out)


@main.command("collisions")
@with_experiment_options
def collisions_cmd(h, k, q, mode, n, seed, guard, threads, fmt, out):
    """Per-set counts of n with r_{A,h}(n) = 2 and >= 3."""
    spec = _spec(h, k, q, mode, n, seed)
    report = run_collision_study(spec, threads=_threads(threads), guard=guard)
    sets = [tuple(int(x) for x in row) for block in iter_sets(spec, guard) for row in block]
    if fmt == "csv":
        _emit(formats.collisions_csv(report, sets), out)
    elif fmt == "json":
        _emit(formats.collisions_json(report, sets), out)
    else:
        summary = collision_summary(report)
        _emit(
            f"sets: {summary['sets']}\n"
            f"count_ge3 < count_eq2: {summary['ge3_less_than_eq2']} "
            f"({summary['fraction_less']:.4f})\n"
            f"count_ge3 = count_eq2: {summary['ge3_equal_eq2']}\n"
            f"count_ge3 > count_eq2: {summary['ge3_greater_than_eq2']}\n"
            f"sets with a collision: {summary['colliding_sets']}, of which "
            f"count_ge3 < count_eq2: {summary['fraction_less_among_colliding']:.4f}\n",
            out,
        )


@main.command("verify")
@click.argument("case", type=click.Choice(sorted(CASES) + ["all"]))
@threads_option
def verify_cmd(case, threads):
    """Reproduce a bundled table and report PASS/FAIL per check."""
    cases = sorted(CASES) if case == "all" else [case]
    failed = 0
    for name in cases:
        click.echo(f"[{name}]")
        for check in run_case(name, _threads(threads)):
            click.echo("  " + check.line())
            failed += not check.passed
    click.echo("PASS" if not failed else f"FAIL ({failed} checks)")
    if failed:
        sys.exit(EXIT_CHECK_FAILED)


if __name__ == "__main__":
    main()
