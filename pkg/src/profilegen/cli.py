"""Command-line entry point: ``profilegen <command> ...``.

Exit codes are a scripting contract: 0 success, 1 domain or validation error,
2 I/O or usage error.  Every command renders its text output from the same
dictionary it emits with ``--format json``, so the two never disagree.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .engine import (
    ROW_CAP,
    build_matrix,
    count_profiles,
    export_matrix,
    export_max_profile,
    intern,
)
from .errors import OracleTooLarge, ProfileGenError
from .generators import canonical_order, eval_generator
from .reducer import mpcs_max_conditional
from .similarity import mpcs
from .spec_io import ParseError, format_generator, load, parse_generator

#: Above this many profiles ``--mode auto`` switches to conditional generators.
AUTO_THRESHOLD = 10 ** 4
SPEC_SUFFIXES = (".gen", ".yaml", ".yml")


class DomainFailure(Exception):
    """Raised inside commands to exit with status 1 after printing a message."""


def _guarded(fn):
    @functools.wraps(fn)
    def run(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError as e:
            for d in e.diagnostics.errors:
                click.echo(f"error: {d}", err=True)
            sys.exit(1)
        except (ProfileGenError, DomainFailure) as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(1)
        except OSError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)

    return run


def _fmt_names(names) -> str:
    return ", ".join(sorted(names))


def _sci(n: int) -> str:
    return f"{n:.3e}"


def _load(path):
    spec, diags = load(path)
    for d in diags.warnings:
        click.echo(f"warning: {path}:{d}", err=True)
    return spec


def _emit(report: dict, fmt: str, out=None):
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _render(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render(value, indent + "  ").rstrip("\n"))
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: " + (", ".join(str(v) for v in value) or "-"))
        elif isinstance(value, float):
            lines.append(f"{indent}{key}: {value!r}")
        else:
            lines.append(f"{indent}{key}: {'-' if value is None else value}")
    return "\n".join(lines) + "\n"


def _published(pairs) -> dict:
    out = {}
    for item in pairs:
        name, sep, value = item.partition("=")
        if not sep or not value.strip().replace(",", "").isdigit():
            raise click.BadParameter(f"expected NAME=N, got {item!r}", param_hint="--published-count")
        out[name.strip()] = int(value.strip().replace(",", ""))
    return out


def _count_or_none(spec):
    try:
        return count_profiles(spec)
    except ProfileGenError:
        return None


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
threads_option = click.option("--threads", type=click.IntRange(min=1), default=None)
row_cap_option = click.option("--row-cap", type=click.IntRange(min=1), default=ROW_CAP, show_default=True)


@click.group()
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker threads for similarity search.")
@click.pass_context
def cli(ctx, threads):
    """Exact symptom-profile enumeration and MPCS between disorders."""
    ctx.obj = {"threads": threads}


def _threads(ctx, local):
    return local if local is not None else ctx.obj["threads"]


@cli.command()
@click.argument("paths", nargs=-1, required=True)
def validate(paths):
    """Parse spec files (or every spec in a directory) and print diagnostics."""
    status = 0
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files += sorted(f for f in p.iterdir() if f.suffix in SPEC_SUFFIXES)
        else:
            files.append(p)
    for f in files:
        try:
            spec, diags = load(f)
        except ParseError as e:
            for line in e.diagnostics.lines(str(f)):
                click.echo(line)
            status = max(status, 1)
            continue
        except OSError as e:
            click.echo(f"{f}: {e.strerror or e}", err=True)
            status = 2
            continue
        for line in diags.lines(str(f)):
            click.echo(line)
        click.echo(f"{f}: ok ({spec.name}, {len(spec.criteria)} criteria)")
    sys.exit(status)


@cli.command()
@click.argument("path")
@format_option
@_guarded
def count(path, fmt):
    """Exact number of profiles of a disorder."""
    spec = _load(path)
    n = count_profiles(spec)
    _emit({"disorder": spec.name, "profiles": n, "scientific": _sci(n)}, fmt)


@cli.command()
@click.argument("path")
@click.option("--mp", is_flag=True, help="Write the single maximum-profile row.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--columns-from", multiple=True,
              help="Spec files whose symptoms come first in the column order.")
@row_cap_option
@_guarded
def export(path, mp, out, columns_from, row_cap):
    """Write the all-profiles matrix (or ``--mp`` row) as CSV."""
    spec = _load(path)
    table = intern([_load(c) for c in columns_from] + [spec])
    sink = open(out, "w", encoding="utf-8", newline="") if out else sys.stdout
    try:
        if mp:
            export_max_profile(spec, table, sink)
        else:
            export_matrix(spec, table, sink, row_cap)
    finally:
        if out:
            sink.close()


def _witness(result):
    if result.witness is None:
        return None, None
    a, b = result.witness
    return sorted(a), sorted(b)


def _segmentation_dict(seg) -> dict:
    return {
        "shared": sorted(seg.shared),
        "minimize_A": sorted(seg.minimize_A),
        "minimize_B": sorted(seg.minimize_B),
        "untouched": sorted(seg.untouched),
        "necessary_A": sorted(seg.necessary_A),
        "necessary_B": sorted(seg.necessary_B),
    }


def _reduced_text(spec) -> str:
    return "[" + ", ".join(format_generator(g) for g in spec.criteria) + "]"


def _brute(A, B, agg, row_cap, threads):
    table = intern([A, B])
    ma = build_matrix(A, table, row_cap)
    mb = build_matrix(B, table, row_cap)
    result = mpcs(ma, mb, agg, threads=threads)
    wa, wb = _witness(result)
    return {
        "mode": "brute",
        "aggregation": agg,
        "value": result.value,
        "value_3dp": f"{result.value:.3f}",
        "phi_ab": result.phi_ab,
        "phi_ba": result.phi_ba,
        "rows_A": len(ma),
        "rows_B": len(mb),
        "comparisons": result.comparisons,
        "witness_A": wa,
        "witness_B": wb,
        "empty_profiles": result.empty_profiles,
    }, result


def _conditional(A, B, published, threads, verify=False):
    rep = mpcs_max_conditional(A, B, published_counts=published, threads=threads, verify=verify)
    wa, wb = _witness(rep.result)
    before = rep.comparisons_before
    return {
        "mode": "conditional",
        "aggregation": "max",
        "value": rep.value,
        "value_3dp": f"{rep.value:.3f}",
        "phi_ab": rep.result.phi_ab,
        "phi_ba": rep.result.phi_ba,
        "comparisons_before": before,
        "comparisons_before_sci": None if before is None else _sci(before),
        "comparisons_after": rep.comparisons_after,
        "witness_A": wa,
        "witness_B": wb,
        "reduced_A": _reduced_text(rep.reduced_A),
        "reduced_B": _reduced_text(rep.reduced_B),
        "segmentation": _segmentation_dict(rep.segmentation),
        "empty_profiles": rep.result.empty_profiles,
    }, rep


@cli.command(name="mpcs")
@click.argument("path_a")
@click.argument("path_b")
@click.option("--agg", type=click.Choice(["max", "mean"]), default="max", show_default=True)
@click.option("--mode", type=click.Choice(["auto", "brute", "conditional"]), default="auto",
              show_default=True)
@click.option("--oracle", is_flag=True, help="Cross-check against the exhaustive reference.")
@click.option("--published-count", "published", multiple=True, metavar="NAME=N")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@threads_option
@row_cap_option
@format_option
@click.pass_context
@_guarded
def mpcs_cmd(ctx, path_a, path_b, agg, mode, oracle, published, out, threads, row_cap, fmt):
    """MPCS between two disorders."""
    if mode == "conditional" and agg != "max":
        raise click.UsageError("conditional generators only apply to --agg max")
    published = _published(published)
    threads = _threads(ctx, threads)
    A, B = _load(path_a), _load(path_b)
    if mode == "auto":
        counts = [_count_or_none(A), _count_or_none(B)]
        big = any(c is not None and c > AUTO_THRESHOLD for c in counts)
        exact = all(c is not None for c in counts)
        mode = "conditional" if agg == "max" and big and exact else "brute"
    if mode == "conditional":
        report, _ = _conditional(A, B, published, threads)
    else:
        report, _ = _brute(A, B, agg, row_cap, threads)
    report = {"disorder_A": A.name, "disorder_B": B.name, **report}
    if oracle:
        from .oracle import naive_mpcs

        try:
            ref = naive_mpcs(A, B, agg)
            agree = abs(ref.value - report["value"]) <= 1e-12
            report["oracle"] = {"value": ref.value, "agrees": agree}
        except OracleTooLarge as e:
            report["oracle"] = {"skipped": str(e)}
            agree = True
        _emit(report, fmt, out)
        if not agree:
            raise DomainFailure("oracle disagrees with the fast path")
        return
    _emit(report, fmt, out)


@cli.command()
@click.argument("path_a")
@click.argument("path_b")
@click.option("--published-count", "published", multiple=True, metavar="NAME=N")
@click.option("--verify", is_flag=True, help="Re-check small instances against the oracle.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@threads_option
@format_option
@click.pass_context
@_guarded
def reduce(ctx, path_a, path_b, published, verify, out, threads, fmt):
    """Conditional generator pair and segmentation for MPCS_max."""
    A, B = _load(path_a), _load(path_b)
    report, rep = _conditional(A, B, _published(published), _threads(ctx, threads), verify)
    head = {
        "A**": report.pop("reduced_A"),
        "B**": report.pop("reduced_B"),
        "disorder_A": A.name,
        "disorder_B": B.name,
    }
    report.pop("mode")
    if verify:
        report["verified"] = rep.verified
    _emit({**head, **report}, fmt, out)
    if verify and rep.verified is False:
        raise DomainFailure("reduced value disagrees with the exhaustive oracle")


@cli.command(name="eval")
@click.argument("generator")
@click.option("--count-only", is_flag=True)
@_guarded
def eval_cmd(generator, count_only):
    """Evaluate one generator, e.g. ``'[{a,b,c}, {d,e}, 1]'`` ("-" reads stdin)."""
    text = sys.stdin.read() if generator == "-" else generator
    g, diags = parse_generator(text)
    for d in diags.warnings:
        click.echo(f"warning: {d}", err=True)
    family = canonical_order(eval_generator(g))
    click.echo(f"{g.kind}: {len(family)} combinations")
    if not count_only:
        for s in family:
            click.echo("{" + _fmt_names(s) + "}")


def main(argv=None):
    cli.main(args=argv, prog_name="profilegen")


if __name__ == "__main__":
    main()
