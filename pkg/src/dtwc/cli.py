"""Command-line front end for dtwc.

Every command prints one JSON document (or an aligned table with
``--format table``) on stdout; logs go to stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import re
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from .catalog import REGISTRY, list_entries, verify, verify_many_async
from .const import (
    DEFAULT_FIELD_SIZES,
    EXIT_BAD_INPUT,
    EXIT_BUDGET,
    EXIT_MISMATCH,
    EXIT_OK,
)
from .exceptions import DTWCBudgetError, DTWCInputError, DTWCVerificationError
from .fforacle import euler_characteristic, ndt_from_count
from .invariants import (
    InvariantTable,
    TableKind,
    bps_from_dt,
    dt_from_bps,
    dt_from_pair_series,
    pair_transform,
)
from .lattice import (
    EulerData,
    KClass,
    NumericalContext,
    SlopeStability,
    TrivialStability,
    euler_hat,
    is_generic,
)
from .models.context import ContextDocument
from .models.quiver import Quiver
from .models.series import SeriesDocument
from .models.settings import DTWCSettings
from .models.table import TableDocument
from .numerics import format_rational, parse_rational
from .series import TruncatedSeries
from .wallcross import coeff_S, coeff_U, coeff_V, transform

_LOGGER = logging.getLogger(__name__)

_CLASS_RE = re.compile(r"\(?\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)?")

Payload = dict[str, Any]


class CLIError(DTWCInputError):
    """Exception raised for unparsable command-line arguments."""


# -- argument parsing -----------------------------------------------------------------


def parse_class(text: str) -> KClass:
    """Parse ``"(1,0)"`` or ``"1,0"`` into a class."""
    match = _CLASS_RE.fullmatch(text.strip())
    if match is None:
        raise CLIError(f"cannot parse class {text!r}")
    return tuple(int(x) for x in match.group(1).split(","))


def parse_parts(text: str) -> list[KClass]:
    """Parse ``"(0,1);(1,0)"`` into a list of classes."""
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise CLIError("parts cannot be empty")
    return [parse_class(p) for p in parts]


def parse_tree(text: str) -> list[tuple[int, int]]:
    """Parse ``"1-2;2-3"`` into directed edges."""
    edges = []
    for item in text.split(";"):
        if not item.strip():
            continue
        head, sep, tail = item.partition("-")
        if not sep:
            raise CLIError(f"cannot parse edge {item!r}")
        try:
            edges.append((int(head), int(tail)))
        except ValueError as e:
            raise CLIError(f"cannot parse edge {item!r}") from e
    return edges


def parse_int_list(text: str) -> list[int]:
    """Parse ``"2,3,4"``."""
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise CLIError(f"cannot parse integer list {text!r}") from e


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "table"), default=argparse.SUPPRESS, help="output format"
    )
    common.add_argument("--order", type=int, default=argparse.SUPPRESS, help="truncation order")
    common.add_argument(
        "--budget", type=int, default=argparse.SUPPRESS, help="oracle state budget"
    )
    common.add_argument(
        "--max-parts", type=int, default=argparse.SUPPRESS, help="decomposition part cap"
    )
    common.add_argument(
        "--threads", type=int, default=argparse.SUPPRESS, help="worker threads"
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=argparse.SUPPRESS, help="more logging"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser."""
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="dtwc",
        description="Exact wall-crossing and invariant computations.",
        parents=[common],
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    quiver = verbs.add_parser("quiver", help="inspect quivers")
    quiver_cmds = quiver.add_subparsers(dest="action", required=True)
    info = quiver_cmds.add_parser("info", parents=[common], help="Euler forms of a quiver")
    info.add_argument("quiver", help="file path, loops:m, c3zn:n, conifold or c3z2z2")
    generic = quiver_cmds.add_parser(
        "generic", parents=[common], help="search for non-generic slope pairs"
    )
    generic.add_argument("quiver")
    generic.add_argument("--c", required=True, help="slope numerator weights, comma separated")
    generic.add_argument("--r", help="slope denominator weights, all ones by default")

    coeff = verbs.add_parser("coeff", parents=[common], help="wall-crossing coefficients")
    coeff.add_argument("kind", choices=("S", "U", "V"))
    coeff.add_argument("--context", required=True, type=Path)
    coeff.add_argument("--parts", required=True, help='classes like "(0,1);(1,0)"')
    coeff.add_argument("--tree", help='edges like "1-2;2-3" (V only)')
    coeff.add_argument("--from", dest="tau", required=True)
    coeff.add_argument("--to", dest="tau_tilde", required=True)

    trans = verbs.add_parser("transform", parents=[common], help="transform invariant tables")
    trans.add_argument("--kind", required=True, choices=("wallcross", "pair", "bps", "dt"))
    trans.add_argument("--context", required=True, type=Path)
    trans.add_argument("--table", required=True, type=Path)
    trans.add_argument("--from", dest="tau")
    trans.add_argument("--to", dest="tau_tilde")
    trans.add_argument("--target", help="single class; default every class up to --order")
    trans.add_argument("--unsigned", action="store_true", help="unsigned (J) law")

    catalog = verbs.add_parser("catalog", help="worked examples")
    catalog_cmds = catalog.add_subparsers(dest="action", required=True)
    catalog_cmds.add_parser("list", parents=[common], help="list entries")
    check = catalog_cmds.add_parser("verify", parents=[common], help="verify an entry")
    check.add_argument("name", help="entry name, or 'all'")

    oracle = verbs.add_parser("oracle", help="finite-field counting oracle")
    oracle_cmds = oracle.add_subparsers(dest="action", required=True)
    count = oracle_cmds.add_parser("ffcount", parents=[common], help="count framed modules")
    count.add_argument("--quiver", required=True)
    count.add_argument("--dim", required=True)
    count.add_argument("--frame", required=True)
    count.add_argument("--fields", default=",".join(str(q) for q in DEFAULT_FIELD_SIZES))
    count.add_argument(
        "--strategy", choices=("auto", "cyclic", "normal_form", "exhaustive"), default="auto"
    )
    count.add_argument("--c", help="slope numerator weights; trivial stability when omitted")
    count.add_argument("--r", help="slope denominator weights, all ones by default")

    series = verbs.add_parser("series", help="generating functions")
    series_cmds = series.add_subparsers(dest="action", required=True)
    expand = series_cmds.add_parser(
        "expand", parents=[common], help="expand a catalog generating function"
    )
    expand.add_argument("name")
    extract = series_cmds.add_parser(
        "extract", parents=[common], help="generalized invariants from a pair series"
    )
    extract.add_argument("--context", required=True, type=Path)
    extract.add_argument("--series", required=True, type=Path)
    return parser


# -- loading --------------------------------------------------------------------------


def load_context(path: Path) -> NumericalContext:
    """Load a context document."""
    document = ContextDocument.model_validate_json(path.read_text())
    return NumericalContext.from_document(document)


def load_table(path: Path, ctx: NumericalContext) -> InvariantTable:
    """Load a table document against ``ctx``."""
    document = TableDocument.model_validate_json(path.read_text())
    return InvariantTable.from_document(document, ctx)


def _settings(args: argparse.Namespace) -> DTWCSettings:
    base = DTWCSettings.from_env()
    overrides = {
        key: getattr(args, flag)
        for key, flag in (
            ("oracle_budget", "budget"),
            ("max_parts", "max_parts"),
            ("threads", "threads"),
        )
        if getattr(args, flag, None) is not None
    }
    if not overrides:
        return base
    return DTWCSettings(**{**base.model_dump(), **overrides})


def _slope(c: str | None, r: str | None, rank: int) -> SlopeStability | TrivialStability:
    if c is None:
        return TrivialStability()
    weights = [parse_rational(x) for x in c.split(",")]
    denominators = [parse_rational(x) for x in r.split(",")] if r else [Fraction(1)] * rank
    if len(weights) != rank:
        raise CLIError(f"--c needs {rank} weights")
    return SlopeStability(tuple(weights), tuple(denominators), "slope")


# -- commands -------------------------------------------------------------------------


def _matrix(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(row) for row in rows]


def cmd_quiver(args: argparse.Namespace, settings: DTWCSettings) -> tuple[Payload, int]:
    """``quiver info`` and ``quiver generic``."""
    quiver = Quiver.resolve(args.quiver)
    if args.action == "info":
        euler = EulerData.from_quiver(quiver)
        return {
            "name": quiver.label,
            "vertices": quiver.vertices,
            "edges": [list(e) for e in quiver.edges],
            "rank": quiver.rank,
            "chi_hat": None if euler.chi_hat is None else _matrix(euler.chi_hat),
            "chi_bar": _matrix(euler.chi_bar),
        }, EXIT_OK
    ctx = NumericalContext.from_quiver(quiver)
    stability = _slope(args.c, args.r, quiver.rank)
    report = is_generic(ctx, stability, getattr(args, "order", 4))
    return report.model_dump(mode="json", by_alias=True), (
        EXIT_OK if report.generic else EXIT_MISMATCH
    )


def cmd_coeff(args: argparse.Namespace, settings: DTWCSettings) -> tuple[Payload, int]:
    """``coeff S|U|V``."""
    ctx = load_context(args.context)
    parts = parse_parts(args.parts)
    tau, tau_tilde = ctx.stability(args.tau), ctx.stability(args.tau_tilde)
    value: Fraction | int
    if args.kind == "S":
        value = coeff_S(ctx, parts, tau, tau_tilde)
    elif args.kind == "U":
        value = coeff_U(ctx, parts, tau, tau_tilde, settings)
    else:
        if args.tree is None:
            raise CLIError("coeff V needs --tree")
        value = coeff_V(ctx, len(parts), parse_tree(args.tree), parts, tau, tau_tilde, settings)
    return {
        "coefficient": args.kind,
        "parts": [list(p) for p in parts],
        "value": format_rational(value),
    }, EXIT_OK


def _targets(
    args: argparse.Namespace, ctx: NumericalContext, table: InvariantTable
) -> list[KClass]:
    if args.target:
        return [ctx.require_in_cone(parse_class(args.target))]
    order = getattr(args, "order", None)
    if order is None:
        order = max((sum(k) for k in table), default=0)
    return ctx.classes_up_to(order)


def cmd_transform(args: argparse.Namespace, settings: DTWCSettings) -> tuple[Payload, int]:
    """``transform --kind wallcross|pair|bps|dt``."""
    ctx = load_context(args.context)
    table = load_table(args.table, ctx)
    if args.kind == "bps":
        result = bps_from_dt(table)
    elif args.kind == "dt":
        result = dt_from_bps(table)
    elif args.kind == "wallcross":
        if args.tau is None or args.tau_tilde is None:
            raise CLIError("wallcross needs --from and --to")
        tau, tau_tilde = ctx.stability(args.tau), ctx.stability(args.tau_tilde)
        entries = {
            k: transform(ctx, table, tau, tau_tilde, k, not args.unsigned, settings)
            for k in _targets(args, ctx, table)
        }
        kind = TableKind.J if args.unsigned else TableKind.DTBAR
        result = InvariantTable(ctx, kind, entries, args.tau_tilde)
    else:
        tau = ctx.stability(args.tau) if args.tau else None
        entries = {
            k: pair_transform(ctx, table, k, not args.unsigned, tau, settings)
            for k in _targets(args, ctx, table)
        }
        kind = TableKind.CHI_FRAMED if args.unsigned else TableKind.PI_NDT
        result = InvariantTable(ctx, kind, entries, table.stability)
    return result.to_document().model_dump(mode="json", by_alias=True), EXIT_OK


def cmd_catalog(args: argparse.Namespace, settings: DTWCSettings) -> tuple[Payload, int]:
    """``catalog list`` and ``catalog verify``."""
    if args.action == "list":
        return {
            "entries": [
                {"name": e.name, "summary": e.summary, "provenance": list(e.provenance)}
                for e in list_entries()
            ]
        }, EXIT_OK
    order = getattr(args, "order", None)
    if args.name.lower() == "all":
        reports = asyncio.run(verify_many_async(REGISTRY.names(), order, settings))
        failed = any(not r.ok for r in reports)
        return {
            "reports": [r.model_dump(mode="json", by_alias=True) for r in reports]
        }, EXIT_MISMATCH if failed else EXIT_OK
    report = verify(args.name, order, settings)
    return report.model_dump(mode="json", by_alias=True), EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_oracle(args: argparse.Namespace, settings: DTWCSettings) -> tuple[Payload, int]:
    """``oracle ffcount``."""
    quiver = Quiver.resolve(args.quiver)
    d, e = parse_int_list(args.dim), parse_int_list(args.frame)
    stability = _slope(args.c, args.r, quiver.rank)
    result = euler_characteristic(
        quiver, d, e, stability, parse_int_list(args.fields), args.strategy, settings
    )
    payload = result.model_dump(mode="json", by_alias=True)
    payload["ndt"] = format_rational(ndt_from_count(result, euler_hat(quiver, d, d)))
    return payload, EXIT_OK


def cmd_series(args: argparse.Namespace, settings: DTWCSettings) -> tuple[Payload, int]:
    """``series expand`` and ``series extract``."""
    if args.action == "expand":
        entry = REGISTRY.get(args.name)
        bound = entry.series_bound(getattr(args, "order", entry.default_order))
        expanded = entry.ndt_series(bound)
        if expanded is None:
            raise CLIError(f"catalog entry {entry.name} has no generating function")
        return expanded.to_document().model_dump(mode="json", by_alias=True), EXIT_OK
    ctx = load_context(args.context)
    document = SeriesDocument.model_validate_json(args.series.read_text())
    table = dt_from_pair_series(ctx, TruncatedSeries.from_document(document))
    return table.to_document().model_dump(mode="json", by_alias=True), EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace, DTWCSettings], tuple[Payload, int]]] = {
    "quiver": cmd_quiver,
    "coeff": cmd_coeff,
    "transform": cmd_transform,
    "catalog": cmd_catalog,
    "oracle": cmd_oracle,
    "series": cmd_series,
}


# -- output ---------------------------------------------------------------------------


def _cell(value: Any) -> str:
    if isinstance(value, list):
        return "(" + ",".join(_cell(v) for v in value) + ")"
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render_table(payload: Payload) -> str:
    """Aligned text rendering: scalar fields first, then the first list of rows."""
    lines = []
    rows: list[dict[str, Any]] | None = None
    for key, value in payload.items():
        if rows is None and isinstance(value, list) and value and isinstance(value[0], dict):
            rows = value
            continue
        lines.append(f"{key}: {_cell(value)}")
    if rows:
        headers = list(rows[0])
        cells = [[_cell(row.get(h, "")) for h in headers] for row in rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
        lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def render(payload: Payload, fmt: str) -> str:
    """Render a payload as JSON or as an aligned table."""
    if fmt == "table":
        return render_table(payload)
    return json.dumps(payload, indent=2)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_BAD_INPUT
    _configure_logging(getattr(args, "verbose", 0))
    try:
        settings = _settings(args)
        payload, code = COMMANDS[args.verb](args, settings)
    except DTWCBudgetError as e:
        _LOGGER.error("Budget exceeded: %s", e)
        return EXIT_BUDGET
    except DTWCVerificationError as e:
        _LOGGER.error("Verification failed: %s", e)
        return EXIT_MISMATCH
    except (DTWCInputError, ValidationError, FileNotFoundError, ValueError) as e:
        _LOGGER.error("Bad input: %s", e)
        return EXIT_BAD_INPUT
    print(render(payload, getattr(args, "format", "json")))
    return code


if __name__ == "__main__":
    sys.exit(main())
