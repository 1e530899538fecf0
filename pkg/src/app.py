"""Command group for the hyperdyn toolkit.

Environment-based plugin loading: the metrics plugin is attached in
development mode only. Every command writes its document to stdout and its
diagnostics to stderr; exit codes are 0 (ok), 1 (--assert-delta failed),
2 (bad input) and 3 (resource bound).
"""

import logging
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import click

from src.config.oracle_config import get_environment
from src.engines.cb_rank import build_adjacent_example, true_adjacent_pairs, tree_to_document
from src.engines.dynamics import build_finite_system, build_theorem2_system, build_translation_example
from src.engines.errors import HyperdynError, ResourceBoundError
from src.engines.exact_metric import format_rational, parse_rational
from src.engines.hyperspace_oracle import separation_curve
from src.engines.space_model import space_to_document
from src.plugins.metrics_plugin import HyperdynMetricsPlugin
from src.tools.graph_export import adjacency, to_dot
from src.tools.serialization import (
    SYSTEM,
    TREE,
    analysis_report,
    curve_to_json,
    dumps,
    load_document,
    parse_rational_list,
    separation_report_to_json,
)

EXIT_ASSERT_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_BOUND = 3

EXPORT_TREE_WINDOW = 4


def _run(ctx: click.Context, command: str, body: Callable[[], Optional[int]]) -> None:
    """Run a command body with metrics, mapping engine errors to exit codes."""
    metrics_plugin: Optional[HyperdynMetricsPlugin] = ctx.obj
    timing_key = metrics_plugin.before_command(command) if metrics_plugin else None
    code = 0
    try:
        code = body() or 0
    except ResourceBoundError as e:
        if metrics_plugin:
            metrics_plugin.record_error(command, e)
        click.echo(f"error: {e}", err=True)
        code = EXIT_RESOURCE_BOUND
    except HyperdynError as e:
        if metrics_plugin:
            metrics_plugin.record_error(command, e)
        click.echo(f"error: {e}", err=True)
        code = EXIT_INPUT_ERROR
    finally:
        if metrics_plugin:
            metrics_plugin.after_command(command, timing_key)
    if code:
        ctx.exit(code)


def _load(ctx: click.Context, source) -> Tuple[Optional[str], object]:
    loaded = load_document(source.read())
    if loaded["status"] == "error":
        click.echo(f"error: {loaded['message']}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)
    return loaded["kind"], loaded["value"]


def _parse_rationals(text: Optional[str], option: str) -> List[Fraction]:
    try:
        return [parse_rational(item) for item in parse_rational_list(text)]
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint=option)


def _parse_curve(text: str) -> List[int]:
    first, sep, last = text.partition("..")
    try:
        lo, hi = int(first), int(last)
    except ValueError:
        raise click.BadParameter(f"expected M1..M2, got {text!r}", param_hint="--curve")
    if not sep or lo < 1 or hi < lo:
        raise click.BadParameter(f"expected 1 <= M1 <= M2, got {text!r}", param_hint="--curve")
    return list(range(lo, hi + 1))


@click.command()
@click.argument("kind", type=click.Choice(["theorem2", "translation", "adjacent", "finite"]))
@click.option("--limits", help="Increasing limit values, e.g. 0,1/2,1 (theorem2).")
@click.option("--depth", type=int, default=1, show_default=True, help="Accretion stages (adjacent).")
@click.option("--tail", type=int, default=8, show_default=True, help="Terms kept per sequence (adjacent).")
@click.option("--cycle", "cycles", multiple=True, help="One periodic orbit, e.g. 0,1 (finite; repeatable).")
@click.pass_context
def build(ctx, kind, limits, depth, tail, cycles):
    """Emit the space description or tree of a catalog construction."""

    def body():
        if kind == "theorem2":
            document = space_to_document(build_theorem2_system(_parse_rationals(limits, "--limits")))
        elif kind == "translation":
            document = space_to_document(build_translation_example())
        elif kind == "adjacent":
            try:
                tree = build_adjacent_example(depth, tail)
            except ValueError as e:
                if isinstance(e, HyperdynError):
                    raise
                raise click.BadParameter(str(e))
            document = tree_to_document(tree)
        else:
            document = space_to_document(
                build_finite_system(_parse_rationals(c, "--cycle") for c in cycles)
            )
        logging.info(f"[CLI] Built {kind}")
        click.echo(dumps(document))

    _run(ctx, "build", body)


@click.command()
@click.argument("source", type=click.File("r", encoding="utf-8"), default="-")
@click.pass_context
def analyze(ctx, source):
    """Verdict for a space description, admissibility for a space tree."""
    kind, value = _load(ctx, source)

    def body():
        report = analysis_report(kind, value)
        if ctx.obj:
            result = report["result"] if kind == SYSTEM else f"admits={report['admits_hyper_expansive']}"
            ctx.obj.record_analysis(kind, result)
        click.echo(dumps(report))

    _run(ctx, "analyze", body)


@click.command()
@click.argument("source", type=click.File("r", encoding="utf-8"), default="-")
@click.option("--window", "M", type=int, default=2, show_default=True, help="Chain indices -M..M are kept.")
@click.option("--horizon", default="auto", show_default=True, help="Iterates |n| <= N, or 'auto'.")
@click.option("--nested/--all", "nested_only", default=True, show_default=True, help="Nested pairs only.")
@click.option("--curve", help="Run every window M1..M2 instead of --window.")
@click.option("--assert-delta", "assert_delta", help="Exit 1 when some c is below this rational.")
@click.option("--workers", type=int, default=None, help="Processes for the nested scan.")
@click.pass_context
def oracle(ctx, source, M, horizon, nested_only, curve, assert_delta, workers):
    """Brute-force separation constant of the induced map on a window."""
    kind, value = _load(ctx, source)
    threshold = _parse_rationals(assert_delta, "--assert-delta")[0] if assert_delta else None
    windows = _parse_curve(curve) if curve else [M]

    def body():
        if kind == TREE:
            raise HyperdynError("the oracle needs a space description, not a tree")
        reports = separation_curve(value, [(m, horizon) for m in windows], nested_only, workers)
        if ctx.obj:
            for report in reports:
                ctx.obj.record_oracle(report.nested_only, report.pairs_examined)
        click.echo(dumps(curve_to_json(reports) if curve else separation_report_to_json(reports[0])))

        if threshold is not None:
            failing = [r for r in reports if r.c < threshold]
            if failing:
                click.echo(
                    f"assertion failed: c={format_rational(failing[0].c)} < {format_rational(threshold)} "
                    f"at M={failing[0].M}",
                    err=True,
                )
                return EXIT_ASSERT_FAILED
        return 0

    _run(ctx, "oracle", body)


@click.command()
@click.argument("source", type=click.File("r", encoding="utf-8"), default="-")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot", show_default=True)
@click.pass_context
def export(ctx, source, fmt):
    """Orbit graph as DOT, or the analysis report with adjacency lists as JSON."""
    kind, value = _load(ctx, source)

    def body():
        if kind == TREE and fmt == "dot":
            raise HyperdynError("DOT graphs are drawn for space descriptions only")
        if fmt == "dot":
            click.echo(to_dot(value), nl=False)
            return
        document = {"report": analysis_report(kind, value)}
        if kind == SYSTEM:
            document["adjacency"] = adjacency(value)
        else:
            document["adjacent_pairs"] = [
                [format_rational(a), format_rational(b)]
                for a, b in true_adjacent_pairs(value, EXPORT_TREE_WINDOW)
            ]
        click.echo(dumps(document))

    _run(ctx, "export", body)


def create_app():
    """Create the command group with environment-based plugins.

    Returns:
        tuple: (click.Group, metrics_plugin or None)
            - click.Group: the hyperdyn commands
            - metrics_plugin: HyperdynMetricsPlugin instance if in development, None otherwise
    """
    metrics_plugin = None
    if get_environment() != "production":
        metrics_plugin = HyperdynMetricsPlugin()
        logging.debug("[CLI] Development plugins loaded: HyperdynMetricsPlugin")

    @click.group()
    @click.pass_context
    def cli(ctx):
        """Hyper-expansiveness decisions and an exact hyperspace oracle."""
        ctx.obj = metrics_plugin

    for command in (build, analyze, oracle, export):
        cli.add_command(command)
    return cli, metrics_plugin
