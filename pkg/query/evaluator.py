"""
Query evaluation and static scheme derivation.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from engine.errors import (OpError, OpErrorKind, QueryEvaluationError, RankDBError,
                           UnboundTableError)
from engine.lattice import Degree, ResiduatedLattice
from engine.rdt import (ClosureMode, CombineKind, RankedDataTable, a_shift, combine, join_sim,
                        project, select_attr, select_closure, select_sim, cartesian)
from engine.schema import RelationScheme

from .nodes import (BinaryExpr, Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum,
                    SelectAttr, SelectClosure, SelectVal, Shift, TableRef, Union, format_decimal)

logger = logging.getLogger('rankdb')

COMBINE_KINDS = {
    Union: CombineKind.UNION,
    Meet: CombineKind.MEET,
    OTimes: CombineKind.OTIMES,
    Residuum: CombineKind.RESIDUUM_CW,
}


@dataclass(frozen=True)
class DerivedScheme:
    """Statically derived shape of a query result."""

    scheme: RelationScheme
    lattice: ResiduatedLattice
    default_rank: Degree

    @property
    def zero_default(self) -> bool:
        return self.default_rank == self.lattice.bot


def shift_degree(node: Shift, lattice: ResiduatedLattice) -> Degree:
    return lattice.parse_degree(format_decimal(node.degree))


def _annotate(node: QueryExpr, exc: Exception) -> QueryEvaluationError:
    if isinstance(exc, QueryEvaluationError):
        return exc
    return QueryEvaluationError(node.to_text(), exc)


def derive_scheme(expr: QueryExpr, catalog: Mapping[str, RankedDataTable]) -> DerivedScheme:
    """Derive scheme, lattice and off-support rank of expr without evaluating it.

    Raises QueryEvaluationError, annotated with the failing node, exactly when
    evaluation would fail on the operation's preconditions.
    """
    try:
        return _derive(expr, catalog)
    except RankDBError as exc:
        raise _annotate(expr, exc) from exc


def _derive(node: QueryExpr, catalog: Mapping[str, RankedDataTable]) -> DerivedScheme:
    if isinstance(node, TableRef):
        if node.name not in catalog:
            raise UnboundTableError(node.name)
        table = catalog[node.name]
        return DerivedScheme(table.scheme, table.lattice, table.default_rank)

    children = [derive_scheme(child, catalog) for child in node.children()]
    first = children[0]
    lattice = first.lattice
    if len(children) == 2 and children[1].lattice != lattice:
        raise OpError(OpErrorKind.LATTICE_MISMATCH,
                      f"{lattice.name} vs {children[1].lattice.name}")

    if isinstance(node, BinaryExpr) and not isinstance(node, Cross):
        second = children[1]
        if first.scheme != second.scheme:
            raise OpError(OpErrorKind.SCHEME_MISMATCH,
                          f"{first.scheme.describe()} vs {second.scheme.describe()}")
        op = {
            Union: lattice.join,
            Meet: lattice.meet,
            OTimes: lattice.tnorm,
            Residuum: lattice.residuum,
        }[type(node)]
        return DerivedScheme(first.scheme, lattice, op(first.default_rank, second.default_rank))

    if isinstance(node, Shift):
        a = shift_degree(node, lattice)
        return DerivedScheme(first.scheme, lattice, lattice.residuum(a, first.default_rank))

    if isinstance(node, Project):
        return DerivedScheme(first.scheme.restrict(node.attributes), lattice, first.default_rank)

    for child in children:
        if not child.zero_default:
            raise OpError(OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED,
                          f"operand of {type(node).__name__.lower()} has a nonzero off-support rank")

    if isinstance(node, SelectVal):
        # Covers SelectClosure as well.
        first.scheme.domain(node.attribute).coerce(node.literal)
        return first

    if isinstance(node, SelectAttr):
        _check_shared_domain(first.scheme, node.p, node.q)
        return first

    second = children[1]
    if not first.scheme.is_disjoint(second.scheme):
        shared = sorted(set(first.scheme.attributes) & set(second.scheme.attributes))
        raise OpError(OpErrorKind.SCHEMES_NOT_DISJOINT, f"shared attributes {shared}")
    scheme = first.scheme.union(second.scheme)
    if isinstance(node, Join):
        _check_shared_domain(scheme, node.p, node.q)
    return DerivedScheme(scheme, lattice, lattice.bot)


def _check_shared_domain(scheme: RelationScheme, p: str, q: str) -> None:
    domain_p, domain_q = scheme.domain(p), scheme.domain(q)
    if domain_p != domain_q:
        raise OpError(OpErrorKind.MISSING_SIMILARITY,
                      f"{p} ({domain_p.id}) and {q} ({domain_q.id}) share no domain with similarity")


class QueryEvaluator:
    """Evaluates query trees over a catalog of named tables by structural recursion."""

    def __init__(self, catalog: Mapping[str, RankedDataTable],
                 closure_mode: ClosureMode = ClosureMode.AUTO):
        self.catalog = catalog
        self.closure_mode = closure_mode
        self._cache: Dict[QueryExpr, RankedDataTable] = {}

    def evaluate(self, expr: QueryExpr) -> RankedDataTable:
        cached = self._cache.get(expr)
        if cached is not None:
            return cached
        try:
            result = self._evaluate(expr)
        except RankDBError as exc:
            raise _annotate(expr, exc) from exc
        self._cache[expr] = result
        return result

    def _evaluate(self, node: QueryExpr) -> RankedDataTable:
        if isinstance(node, TableRef):
            if node.name not in self.catalog:
                raise UnboundTableError(node.name)
            return self.catalog[node.name]
        if isinstance(node, Cross):
            return cartesian(self.evaluate(node.left), self.evaluate(node.right))
        if isinstance(node, BinaryExpr):
            return combine(COMBINE_KINDS[type(node)], self.evaluate(node.left), self.evaluate(node.right))
        if isinstance(node, Join):
            return join_sim(self.evaluate(node.left), self.evaluate(node.right), node.p, node.q)
        if isinstance(node, Shift):
            table = self.evaluate(node.child)
            return a_shift(shift_degree(node, table.lattice), table)
        if isinstance(node, Project):
            return project(node.attributes, self.evaluate(node.child))
        if isinstance(node, SelectClosure):
            return select_closure(self.evaluate(node.child), node.attribute, node.literal,
                                  self.closure_mode)
        if isinstance(node, SelectVal):
            return select_sim(self.evaluate(node.child), node.attribute, node.literal)
        if isinstance(node, SelectAttr):
            return select_attr(self.evaluate(node.child), node.p, node.q)
        raise QueryEvaluationError(node.to_text(), TypeError(f"unknown node {type(node).__name__}"))


def evaluate(expr: QueryExpr, catalog: Mapping[str, RankedDataTable],
             closure_mode: ClosureMode = ClosureMode.AUTO) -> RankedDataTable:
    """Evaluate expr against the named tables of catalog."""
    result = QueryEvaluator(catalog, closure_mode).evaluate(expr)
    logger.info(f"⚙️ QUERY EVALUATED | Query: {expr.to_text()} | Rows: {len(result)}")
    return result


def resolve_closure_mode(expr: QueryExpr, catalog: Mapping[str, RankedDataTable],
                         closure_mode: ClosureMode = ClosureMode.AUTO) -> Optional[ClosureMode]:
    """Weakest concrete mode among the closure selections of expr, None without any."""
    modes = set()
    for node in expr.walk():
        if isinstance(node, SelectClosure):
            if closure_mode is not ClosureMode.AUTO:
                modes.add(closure_mode)
                continue
            scheme = derive_scheme(node.child, catalog).scheme
            modes.add(ClosureMode.FULL if scheme.is_enumerable else ClosureMode.SUPPORT)
    if not modes:
        return None
    return ClosureMode.SUPPORT if ClosureMode.SUPPORT in modes else ClosureMode.FULL
