"""
Command Line Module

This module exposes counting, generation, bijection application, series
expansion and the verification suites as the `runsort` command. Data goes to
stdout, diagnostics to stderr. Domain errors exit with status 1, usage errors
with status 2.
"""

import json
import logging
import sys
from contextlib import contextmanager

import click

from utils.bijections import BIJECTIONS, apply_bijection, bijection_trace
from utils.core import CombinatoricsError, run_count
from utils.counting import COUNT_TABLES, ceil_half
from utils.generation import (
    PARTITION_CLASSES,
    generate_partitions,
    generate_rsp,
    generate_rsp_by_rlmin,
    oracle_rsp,
)
from utils.limits import COUNT_MAX_N, GEN_MAX_N, check_limit
from utils.series import egf_rhs
from utils.text_format import PARSERS, parse_target, to_json
from utils.verification import SUITE_ORDER, run_suite

# Configure logger
logger = logging.getLogger(__name__)

# table -> (first row n, first column index, last column index of row n)
ROW_LAYOUT = {
    "r": (1, 1, ceil_half),
    "h": (1, 1, lambda n: n),
    "stirling": (0, 0, lambda n: n),
    "ncmf": (1, 1, ceil_half),
}


@contextmanager
def domain_errors():
    """Report engine errors as one-line click errors (exit status 1)"""
    try:
        yield
    except CombinatoricsError as e:
        logger.warning(f"Rejected input: {e}")
        raise click.ClickException(str(e))


def emit_json(payload):
    click.echo(json.dumps(payload))


@click.group()
@click.option("--verbose", is_flag=True, help="Log engine progress to stderr.")
def cli(verbose):
    """Run-sorted permutations and merging-free partitions."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------

def format_table(name, table, n, head, sep):
    """Render a count table as text rows; the a-table is paged by n"""
    lines = []
    if name in ("l", "bell"):
        for m in range(0, n + 1):
            lines.append(f"{m}{head}{table[m]}")
    elif name == "a":
        for m in range(1, n + 1):
            lines.append(f"n={m}")
            for k in range(1, ceil_half(m) + 1):
                values = [str(table[m, k, r]) for r in range(1, m + 1)]
                lines.append(f"{k}{head}" + sep.join(values))
    else:
        n_start, j_start, j_stop = ROW_LAYOUT[name]
        for m in range(n_start, n + 1):
            values = [str(v) for v in table.row(m, j_start, j_stop(m))]
            lines.append(f"{m}{head}" + sep.join(values))
    return lines


@cli.command()
@click.option("--table", "name", required=True, type=click.Choice(sorted(COUNT_TABLES)))
@click.option("--n", "n", required=True, type=click.IntRange(min=0), help="Largest n.")
@click.option("--format", "fmt", default="table", type=click.Choice(["table", "tsv", "json"]))
def count(name, n, fmt):
    """Print a counting table up to n."""
    with domain_errors():
        check_limit("n", n, COUNT_MAX_N[name])
        table = COUNT_TABLES[name](n)
    if fmt == "json":
        emit_json(table.to_jsonable())
        return
    head, sep = (": ", " ") if fmt == "table" else ("\t", "\t")
    for line in format_table(name, table, n, head, sep):
        click.echo(line)


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

@cli.group()
def gen():
    """Generate run-sorted permutations or set partitions."""


def echo_cells(cells, label, selected, fmt):
    """Print cells with "<label>=<index>" headers, or only the selected cell"""
    if selected is not None:
        cell = cells.get(selected, ())
        if fmt == "json":
            emit_json([to_json(obj) for obj in cell])
        else:
            for obj in cell:
                click.echo(str(obj))
        return
    if fmt == "json":
        emit_json([[to_json(obj) for obj in cell] for cell in cells.values()])
        return
    for index, cell in cells.items():
        click.echo(f"{label}={index}")
        for obj in cell:
            click.echo(str(obj))


@gen.command("rsp")
@click.option("--n", "n", required=True, type=click.IntRange(min=1))
@click.option("--k", "k", type=click.IntRange(min=1), help="Only permutations with k runs.")
@click.option("--rlmin", "rlmin", type=click.IntRange(min=1), help="Only permutations with this many right-to-left minima.")
@click.option("--engine", default="dp", type=click.Choice(["dp", "oracle"]))
@click.option("--format", "fmt", default="text", type=click.Choice(["text", "json"]))
def gen_rsp(n, k, rlmin, engine, fmt):
    """Run-sorted permutations of [n], by runs (or by right-to-left minima)."""
    with domain_errors():
        check_limit("n", n, GEN_MAX_N)
        if rlmin is not None:
            family = generate_rsp_by_rlmin(n)
            cells = {r: [pi for pi in family.cell(r) if k is None or run_count(pi) == k] for r in range(1, n + 1)}
            echo_cells(cells, "r", rlmin, fmt)
            return
        family = generate_rsp(n) if engine == "dp" else oracle_rsp(n)
        cells = {j: family.cell(j) for j in range(1, ceil_half(n) + 1)}
        echo_cells(cells, "k", k, fmt)


@gen.command("partitions")
@click.option("--n", "n", required=True, type=click.IntRange(min=1))
@click.option("--class", "partition_class", default="all", type=click.Choice(list(PARTITION_CLASSES)))
@click.option("--k", "k", type=click.IntRange(min=1), help="Only partitions with k blocks.")
@click.option("--format", "fmt", default="text", type=click.Choice(["text", "json"]))
def gen_partitions(n, partition_class, k, fmt):
    """Set partitions of [n] in a class, in canonical-form order."""
    with domain_errors():
        partitions = [p for p in generate_partitions(n, partition_class) if k is None or p.k == k]
    if fmt == "json":
        emit_json([to_json(p) for p in partitions])
        return
    for p in partitions:
        click.echo(str(p))


# ---------------------------------------------------------------------------
# map
# ---------------------------------------------------------------------------

def require_arguments(name, i, target):
    """Missing map arguments are usage errors, not domain errors"""
    if BIJECTIONS[name][2] and i is None:
        raise click.UsageError(f"--i is required for --bijection {name}")
    if name == "rlmin-insert" and target is None:
        raise click.UsageError("--target is required for --bijection rlmin-insert")


@cli.command("map")
@click.option("--bijection", "name", required=True, type=click.Choice(list(BIJECTIONS)))
@click.option("--input", "text", required=True, help="Object in text encoding, e.g. 1,3,8/2/4,7/5,6")
@click.option("--i", "i", type=int, help="Index argument of phi, psi and extend.")
@click.option("--target", help="rlmin-insert target: 'end' or a right-to-left minimum.")
@click.option("--trace", is_flag=True, help="Also print the alpha/beta correction vectors.")
@click.option("--format", "fmt", default="text", type=click.Choice(["text", "json"]))
def map_command(name, text, i, target, trace, fmt):
    """Apply a bijection (or its inverse) to one object."""
    require_arguments(name, i, target)
    with domain_errors():
        obj = PARSERS[BIJECTIONS[name][0]](text)
        result = apply_bijection(name, obj, i, parse_target(target) if target is not None else None)
        vectors = bijection_trace(obj) if trace and name == "alpha" else None

    if isinstance(result, tuple):
        index, image = result
        if fmt == "json":
            emit_json({"bijection": name, "input": text, "i": index, "output": to_json(image)})
        else:
            click.echo(f"{index}\t{image}")
        return

    if fmt == "json":
        payload = {"bijection": name, "input": text, "output": to_json(result)}
        if vectors is not None:
            payload["trace"] = {
                "u": list(vectors.u),
                "delta": list(vectors.delta),
                "v": list(vectors.v),
                "delta_prime": list(vectors.delta_prime),
            }
        emit_json(payload)
        return
    click.echo(str(result))
    if vectors is not None:
        for label, values in (("u", vectors.u), ("delta", vectors.delta), ("v", vectors.v), ("delta'", vectors.delta_prime)):
            click.echo(f"{label}=" + ",".join(str(x) for x in values))


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

@cli.command()
@click.option("--nx", required=True, type=click.IntRange(min=1))
@click.option("--ny", required=True, type=click.IntRange(min=1))
@click.option("--nz", required=True, type=click.IntRange(min=1))
@click.option("--raw", is_flag=True, help="Print raw coefficients instead of multiplying by m!.")
@click.option("--format", "fmt", default="tsv", type=click.Choice(["tsv", "json"]))
def series(nx, ny, nz, raw, fmt):
    """Expand the generating function of the joint run / right-to-left minima counts.

    Page m lists rows k = 0..ny and columns r = 0..nz; scaled entries are
    the counts of permutations of [m+1].
    """
    with domain_errors():
        expansion = egf_rhs(nx, ny, nz)
    value = expansion.coeff if raw else expansion.egf_coeff

    if fmt == "json":
        terms = [
            [m, k, r, str(value(m, k, r))]
            for (m, k, r) in sorted(expansion.terms())
        ]
        emit_json({"bounds": [nx, ny, nz], "scaled": not raw, "terms": terms})
        return
    for m in range(nx + 1):
        click.echo(f"m={m}")
        for k in range(ny + 1):
            click.echo(f"{k}\t" + "\t".join(str(value(m, k, r)) for r in range(nz + 1)))


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@cli.command()
@click.option("--suite", default="all", type=click.Choice(["all", *SUITE_ORDER]))
@click.option("--nmax", default=8, show_default=True, type=click.IntRange(min=1))
@click.pass_context
def verify(ctx, suite, nmax):
    """Run property suites; exit status 1 if any property fails."""
    with domain_errors():
        results = run_suite(suite, nmax)
    failed = 0
    for result in results:
        if result.passed:
            click.echo(f"PASS {result.suite}/{result.name} ({result.seconds:.2f}s)")
        else:
            failed += 1
            click.echo(f"FAIL {result.suite}/{result.name}: {result.detail}")
    click.echo(f"{len(results) - failed} passed, {failed} failed")
    if failed:
        ctx.exit(1)


def run(argv):
    """
    Run the command line on argv and return the exit status

    Args:
        argv: Arguments without the program name

    Returns:
        int: 0 on success, 1 on domain errors or failed checks, 2 on usage errors
    """
    try:
        rv = cli.main(args=list(argv), prog_name="runsort", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


def main():
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
