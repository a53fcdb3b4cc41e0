"""
Sensitivity bounds for query plans.

Given lower bounds on the similarity of each input table to an alternative
version of it, `propagate_bound` derives a lower bound on the similarity of
the query results by structural recursion:

    table reference            assumed degree (1 when not listed)
    union, meet                b1 meet b2
    otimes, cross, join,
    residuum                   b1 * b2
    shift, project, select     bound of the operand
    selectc                    bound of the operand, as a tuple-based guarantee

A plan containing `selectc` is tuple-based: its bound speaks about the
tuple-based similarity of the results and holds only for similarities that
are transitive with respect to the multiplication. Operations that do not
preserve tuple-based similarity get the bottom bound in such plans, and so
does `selectc` evaluated over the support only.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from engine.lattice import Degree, ResiduatedLattice
from engine.rdt import ClosureMode, RankedDataTable
from engine.schema import transitive_under
from engine.similarity import RANK_BASED, TUPLE_BASED, ComparisonConfig, table_similarity

from .evaluator import derive_scheme, evaluate, resolve_closure_mode
from .nodes import (Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum, SelectAttr,
                    SelectClosure, SelectVal, Shift, TableRef, Union)

logger = logging.getLogger('rankdb')

RULE_ASSUMPTION = 'assumption'
RULE_MEET = 'meet'
RULE_OTIMES = 'otimes'
RULE_PASS = 'pass-through'
RULE_TUPLE_PASS = 'pass-through (tuple-based)'
RULE_NO_TUPLE_GUARANTEE = 'no-tuple-guarantee'
RULE_SUPPORT_CLOSURE = 'support-closure'

# Operations that keep tuple-based similarity.
TUPLE_PRESERVING = (TableRef, Union, Cross, Project, SelectClosure)


@dataclass(frozen=True)
class TraceStep:
    node: str
    rule: str
    inputs: Tuple[Degree, ...]
    output: Degree


@dataclass
class SensitivityBound:
    """Propagated bound with its derivation; the root step is last in the trace."""

    value: Degree
    lattice: ResiduatedLattice
    tuple_based: bool
    trace: List[TraceStep] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        fmt = self.lattice.format_degree
        return {
            'bound': fmt(self.value),
            'measure': 'tuple' if self.tuple_based else 'rank',
            'trace': [
                {
                    'node': step.node,
                    'rule': step.rule,
                    'inputs': [fmt(value) for value in step.inputs],
                    'output': fmt(step.output),
                }
                for step in self.trace
            ],
        }


def is_tuple_based(expr: QueryExpr) -> bool:
    return any(isinstance(node, SelectClosure) for node in expr.walk())


def propagate_bound(expr: QueryExpr, assumptions: Mapping[str, Degree],
                    lattice: ResiduatedLattice,
                    closure_mode: ClosureMode = ClosureMode.FULL) -> SensitivityBound:
    """Lower bound on E(evaluate(expr, C), evaluate(expr, C')).

    assumptions maps table names to lower bounds on E(C(name), C'(name)), or
    on the tuple-based similarity for plans containing selectc. closure_mode
    is the concrete mode selectc nodes are evaluated in.
    """
    for degree in assumptions.values():
        lattice.check(degree)
    tuple_based = is_tuple_based(expr)
    trace: List[TraceStep] = []

    def visit(node: QueryExpr) -> Degree:
        inputs = tuple(visit(child) for child in node.children())
        if isinstance(node, TableRef):
            rule, output = RULE_ASSUMPTION, assumptions.get(node.name, lattice.top)
        elif tuple_based and not isinstance(node, TUPLE_PRESERVING):
            rule, output = RULE_NO_TUPLE_GUARANTEE, lattice.bot
        elif isinstance(node, SelectClosure):
            if closure_mode is ClosureMode.FULL:
                rule, output = RULE_TUPLE_PASS, inputs[0]
            else:
                rule, output = RULE_SUPPORT_CLOSURE, lattice.bot
        elif isinstance(node, (Union, Meet)):
            rule, output = RULE_MEET, lattice.meet(*inputs)
        elif isinstance(node, (OTimes, Residuum, Cross, Join)):
            rule, output = RULE_OTIMES, lattice.tnorm(*inputs)
        elif isinstance(node, (Shift, Project, SelectVal, SelectAttr)):
            rule, output = RULE_PASS, inputs[0]
        else:
            raise TypeError(f"unknown node {type(node).__name__}")
        trace.append(TraceStep(node.to_text(), rule, inputs, output))
        return output

    value = visit(expr)
    return SensitivityBound(value, lattice, tuple_based, trace)


@dataclass
class BoundReport:
    bound: SensitivityBound
    actual: Degree
    assumptions: Dict[str, Degree]
    measure: str
    transitive_similarities: bool = True

    @property
    def slack(self) -> float:
        lattice = self.bound.lattice
        return lattice.to_float(self.actual) - lattice.to_float(self.bound.value)

    @property
    def holds(self) -> bool:
        return self.bound.lattice.approx_leq(self.bound.value, self.actual)

    def to_dict(self) -> Dict[str, Any]:
        fmt = self.bound.lattice.format_degree
        return {
            'bound': fmt(self.bound.value),
            'actual': fmt(self.actual),
            'slack': round(self.slack, 12),
            'holds': self.holds,
            'measure': self.measure,
            'assumptions': {name: fmt(value) for name, value in sorted(self.assumptions.items())},
            'transitive_similarities': self.transitive_similarities,
            'trace': self.bound.to_dict()['trace'],
        }


def measure_assumptions(names, catalog1: Mapping[str, RankedDataTable],
                        catalog2: Mapping[str, RankedDataTable],
                        cfg: ComparisonConfig = RANK_BASED) -> Dict[str, Degree]:
    """Similarity of each named table to its counterpart in the other catalog."""
    return {name: table_similarity(catalog1[name], catalog2[name], cfg) for name in names}


def verify_bound(expr: QueryExpr, catalog1: Mapping[str, RankedDataTable],
                 catalog2: Mapping[str, RankedDataTable],
                 assumptions: Optional[Mapping[str, Degree]] = None,
                 closure_mode: ClosureMode = ClosureMode.AUTO) -> BoundReport:
    """Evaluate expr on both catalogs and compare their similarity with the propagated bound.

    Tables without a given assumption are measured directly on the two catalogs.
    """
    derived = derive_scheme(expr, catalog1)
    derive_scheme(expr, catalog2)
    lattice = derived.lattice
    tuple_based = is_tuple_based(expr)
    cfg = TUPLE_BASED if tuple_based else RANK_BASED

    given = dict(assumptions or {})
    missing = [name for name in expr.table_names() if name not in given]
    given.update(measure_assumptions(missing, catalog1, catalog2, cfg))

    resolved = resolve_closure_mode(expr, catalog1, closure_mode) or ClosureMode.FULL
    bound = propagate_bound(expr, given, lattice, resolved)

    result1 = evaluate(expr, catalog1, closure_mode)
    result2 = evaluate(expr, catalog2, closure_mode)
    measure = cfg
    if tuple_based and (result1.default_rank != lattice.bot or result2.default_rank != lattice.bot):
        # Only reachable through nodes whose bound is already bottom.
        measure = RANK_BASED
    actual = table_similarity(result1, result2, measure)

    transitive = True
    if tuple_based:
        transitive = _similarities_transitive(expr, catalog1)
        if not transitive:
            logger.warning("⚠️ BOUND | Tuple-based guarantee assumes transitive similarities; "
                           "at least one domain of the plan is not transitive")

    report = BoundReport(bound, actual, given, measure.describe(), transitive)
    level = logging.INFO if report.holds else logging.WARNING
    logger.log(level, f"📏 BOUND VERIFIED | Query: {expr.to_text()} | "
                      f"Bound: {lattice.format_degree(bound.value)} | "
                      f"Actual: {lattice.format_degree(actual)} | Holds: {report.holds}")
    return report


def _similarities_transitive(expr: QueryExpr, catalog: Mapping[str, RankedDataTable]) -> bool:
    seen = set()
    for name in expr.table_names():
        for _, domain in catalog[name].scheme.bindings:
            if domain.id in seen:
                continue
            seen.add(domain.id)
            if transitive_under(domain) is not True:
                return False
    return True
