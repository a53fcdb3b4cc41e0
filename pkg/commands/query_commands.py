import argparse
import logging
from typing import Any, Dict, List

from catalog import load_table, render
from engine.errors import UnboundTableError
from engine.rdt import ClosureMode
from engine.similarity import ComparisonConfig, compare
from query.bounds import BoundReport, SensitivityBound, propagate_bound, verify_bound
from query.evaluator import derive_scheme, evaluate, resolve_closure_mode
from query.parser import parse

from .base_command import (EXIT_OK, EXIT_VIOLATION, BaseCommand, CommandContext, json_line,
                           parse_assignments, parse_assumptions, result)

logger = logging.getLogger('rankdb')

CLOSURE_CHOICES = [mode.value for mode in ClosureMode]


def _add_closure_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--closure', choices=CLOSURE_CHOICES, default=ClosureMode.AUTO.value,
                        help='Evaluation mode of selectc (default: auto)')


def _trace_lines(bound: SensitivityBound) -> List[str]:
    fmt = bound.lattice.format_degree
    lines = []
    for step in bound.trace:
        inputs = ", ".join(fmt(value) for value in step.inputs)
        lines.append(f"  {fmt(step.output):>6}  {step.rule:<28} {step.node}"
                     + (f"  <- {inputs}" if inputs else ""))
    return lines


class QueryCommand(BaseCommand):
    def get_name(self) -> str:
        return "query"

    def get_description(self) -> str:
        return "Evaluate a query and print the result table, highest rank first"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('expression', help='Query expression, e.g. "project [LOCATION] houses"')
        _add_closure_argument(parser)

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        catalog = context.catalog
        expr = parse(args.expression, catalog.lattice)
        table = evaluate(expr, catalog, ClosureMode(args.closure))
        return result(render(table, context.output_format.value), rows=len(table))


class SimCommand(BaseCommand):
    def get_name(self) -> str:
        return "sim"

    def get_description(self) -> str:
        return "Print subsethood in both directions and the similarity of two tables"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('left', help='First table')
        parser.add_argument('right', help='Second table')
        parser.add_argument('--mode', choices=['rank', 'tuple', 'hedged'], default='rank',
                            help='Comparison mode (default: rank)')
        parser.add_argument('--hedge', choices=['identity', 'globalization'], default='identity',
                            help='Hedge for --mode hedged (default: identity)')
        parser.add_argument('--enumeration', choices=['support', 'full'], default='support',
                            help='Tuples ranged over by tuple-based modes (default: support)')

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        catalog = context.catalog
        for name in (args.left, args.right):
            if name not in catalog:
                raise UnboundTableError(name)
        cfg = ComparisonConfig.from_names(args.mode, args.hedge, args.enumeration)
        forward, backward, similarity = compare(catalog[args.left], catalog[args.right], cfg)
        fmt = catalog.lattice.format_degree
        logger.info(f"🔗 SIMILARITY | Tables: {args.left}, {args.right} | Mode: {cfg.describe()} | "
                    f"E: {fmt(similarity)}")
        if context.jsonl:
            output = json_line({'left': args.left, 'right': args.right, 'mode': cfg.describe(),
                                'S_left_right': fmt(forward), 'S_right_left': fmt(backward),
                                'E': fmt(similarity)})
        else:
            output = "\n".join([
                f"mode: {cfg.describe()}",
                f"S({args.left}, {args.right}) = {fmt(forward)}",
                f"S({args.right}, {args.left}) = {fmt(backward)}",
                f"E({args.left}, {args.right}) = {fmt(similarity)}",
            ])
        return result(output, similarity=similarity)


class BoundCommand(BaseCommand):
    def get_name(self) -> str:
        return "bound"

    def get_description(self) -> str:
        return "Propagate similarity assumptions on base tables to a guaranteed bound on the query result"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('expression', help='Query expression')
        parser.add_argument('--assume', action='append', metavar='NAME=DEGREE',
                            help='Lower bound on the similarity of a base table (default: 1)')
        _add_closure_argument(parser)

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        catalog = context.catalog
        lattice = catalog.lattice
        expr = parse(args.expression, lattice)
        derive_scheme(expr, catalog)
        assumptions = parse_assumptions(args.assume, lattice)
        for name in assumptions:
            if name not in expr.table_names():
                logger.warning(f"⚠️ UNUSED ASSUMPTION | Table: {name} | Query: {expr.to_text()}")
        closure_mode = resolve_closure_mode(expr, catalog, ClosureMode(args.closure)) or ClosureMode.FULL
        bound = propagate_bound(expr, assumptions, lattice, closure_mode)
        fmt = lattice.format_degree
        if context.jsonl:
            output = json_line(bound.to_dict())
        else:
            measure = "tuple-based" if bound.tuple_based else "rank-based"
            output = "\n".join([f"bound: {fmt(bound.value)} ({measure})", "trace:", *_trace_lines(bound)])
        return result(output, bound=bound.value)


class VerifyCommand(BaseCommand):
    def get_name(self) -> str:
        return "verify"

    def get_description(self) -> str:
        return ("Evaluate a query on the catalog and on an alternative catalog and check the actual "
                "similarity of the results against the propagated bound")

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('expression', help='Query expression')
        parser.add_argument('--alt', action='append', metavar='NAME=PATH', required=True,
                            help='Replace table NAME by the ranked CSV at PATH in the alternative catalog')
        parser.add_argument('--assume', action='append', metavar='NAME=DEGREE',
                            help='Assumption to use instead of measuring the two tables')
        _add_closure_argument(parser)

    def execute(self, args: argparse.Namespace, context: CommandContext) -> Dict[str, Any]:
        catalog = context.catalog
        alternative = catalog.copy()
        for name, path in parse_assignments(args.alt, '--alt').items():
            if name not in catalog:
                raise UnboundTableError(name)
            load_table(name, path, alternative)
        expr = parse(args.expression, catalog.lattice)
        assumptions = parse_assumptions(args.assume, catalog.lattice)
        report = verify_bound(expr, catalog, alternative, assumptions, ClosureMode(args.closure))
        exit_code = EXIT_OK if report.holds else EXIT_VIOLATION
        return result(self._format(report, context), exit_code, holds=report.holds)

    def _format(self, report: BoundReport, context: CommandContext) -> str:
        if context.jsonl:
            return json_line(report.to_dict())
        fmt = report.bound.lattice.format_degree
        lines = [
            f"measure: {report.measure}",
            "assumptions: " + ", ".join(f"{name}={fmt(value)}"
                                        for name, value in sorted(report.assumptions.items())),
            f"bound:  {fmt(report.bound.value)}",
            f"actual: {fmt(report.actual)}",
            f"holds:  {'yes' if report.holds else 'NO'}",
        ]
        if not report.transitive_similarities:
            lines.append("note: some similarities are not transitive; a tuple-based bound is not guaranteed")
        lines.append("trace:")
        lines.extend(_trace_lines(report.bound))
        return "\n".join(lines)
