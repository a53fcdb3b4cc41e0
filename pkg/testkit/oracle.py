"""
Brute-force reference semantics.

Every operation and measure is computed from its defining formula by
iterating over the full tuple universe of the schemes involved; no support
shortcuts are taken. All domains must declare finite values.
"""
from enum import Enum
from typing import Dict, Mapping, Optional

from engine.errors import UnboundTableError
from engine.lattice import IDENTITY, Degree, Hedge, ResiduatedLattice
from engine.rdt import RankedDataTable
from engine.schema import (DataTuple, RelationScheme, enumerate_tuples, tuple_concat,
                           tuple_similarity_unchecked)
from query.evaluator import derive_scheme, shift_degree
from query.nodes import (BinaryExpr, Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum,
                         SelectAttr, SelectClosure, SelectVal, Shift, TableRef, Union)

# A table as a total function on its universe.
RankFunction = Dict[DataTuple, Degree]


class MeasureKind(Enum):
    S = "S"
    E = "E"
    S_TUPLE = "S~"
    E_TUPLE = "E~"
    S_HEDGED = "S~*"


def rank_function(table: RankedDataTable) -> RankFunction:
    return {t: table.rank(t) for t in enumerate_tuples(table.scheme)}


def tables_agree(d1: RankedDataTable, d2: RankedDataTable) -> bool:
    """Same scheme and the same rank on every tuple of the universe."""
    if d1.scheme != d2.scheme or d1.lattice != d2.lattice:
        return False
    return all(d1.rank(t) == d2.rank(t) for t in enumerate_tuples(d1.scheme))


def _table(scheme: RelationScheme, lattice: ResiduatedLattice, ranks: RankFunction,
           default: Optional[Degree] = None) -> RankedDataTable:
    # Rows cover the whole universe, so the default only matters for tuples
    # outside it; it is kept equal to the engine's for comparisons.
    return RankedDataTable(scheme, lattice, ranks, default)


def oracle_eval(expr: QueryExpr, catalog: Mapping[str, RankedDataTable]) -> RankedDataTable:
    """Evaluate expr by definition over full universes (selectc in full mode)."""
    derived = derive_scheme(expr, catalog)
    lattice = derived.lattice
    ranks = _eval(expr, catalog, lattice)
    return _table(derived.scheme, lattice, ranks, derived.default_rank)


def _eval(node: QueryExpr, catalog, lattice: ResiduatedLattice) -> RankFunction:
    if isinstance(node, TableRef):
        if node.name not in catalog:
            raise UnboundTableError(node.name)
        return rank_function(catalog[node.name])

    if isinstance(node, BinaryExpr) and not isinstance(node, Cross):
        left, right = _eval(node.left, catalog, lattice), _eval(node.right, catalog, lattice)
        op = {Union: lattice.join, Meet: lattice.meet, OTimes: lattice.tnorm,
              Residuum: lattice.residuum}[type(node)]
        return {t: op(left[t], right[t]) for t in left}

    if isinstance(node, Shift):
        child = _eval(node.child, catalog, lattice)
        a = shift_degree(node, lattice)
        return {t: lattice.residuum(a, rank) for t, rank in child.items()}

    if isinstance(node, Project):
        child = _eval(node.child, catalog, lattice)
        target = derive_scheme(node, catalog).scheme
        result = {r: lattice.bot for r in enumerate_tuples(target)}
        for t, rank in child.items():
            r = t.restrict(target.attributes)
            result[r] = lattice.join(result[r], rank)
        return result

    if isinstance(node, (Cross, Join)):
        left, right = _eval(node.left, catalog, lattice), _eval(node.right, catalog, lattice)
        scheme = derive_scheme(node, catalog).scheme
        result = {}
        for s, rank_s in left.items():
            for t, rank_t in right.items():
                u = tuple_concat(s, t)
                rank = lattice.tnorm(rank_s, rank_t)
                if isinstance(node, Join):
                    domain = scheme.domain(node.p)
                    rank = lattice.tnorm(rank, domain.similarity(u[node.p], u[node.q]))
                result[u] = rank
        return result

    child = _eval(node.child, catalog, lattice)
    scheme = derive_scheme(node, catalog).scheme

    if isinstance(node, SelectClosure):
        domain = scheme.domain(node.attribute)
        d = domain.coerce(node.literal)
        result = {}
        for t in child:
            match = domain.similarity(t[node.attribute], d)
            result[t] = lattice.join_all(
                lattice.tnorm(lattice.tnorm(rank, tuple_similarity_unchecked(lattice, scheme, u, t)), match)
                for u, rank in child.items())
        return result

    if isinstance(node, SelectVal):
        domain = scheme.domain(node.attribute)
        d = domain.coerce(node.literal)
        return {t: lattice.tnorm(rank, domain.similarity(t[node.attribute], d))
                for t, rank in child.items()}

    if isinstance(node, SelectAttr):
        domain = scheme.domain(node.p)
        return {t: lattice.tnorm(rank, domain.similarity(t[node.p], t[node.q]))
                for t, rank in child.items()}

    raise TypeError(f"unknown node {type(node).__name__}")


def oracle_measure(kind: MeasureKind, d1: RankedDataTable, d2: RankedDataTable,
                   hedge: Hedge = IDENTITY) -> Degree:
    """Subsethood or similarity degree computed by its definition over the full universe."""
    lattice = d1.lattice
    scheme = d1.scheme
    universe = list(enumerate_tuples(scheme))

    def rank_subsethood(a: RankedDataTable, b: RankedDataTable) -> Degree:
        return lattice.meet_all(lattice.residuum(a.rank(t), b.rank(t)) for t in universe)

    def tuple_subsethood(a: RankedDataTable, b: RankedDataTable, h: Hedge) -> Degree:
        return lattice.meet_all(
            lattice.residuum(a.rank(t), lattice.join_all(
                lattice.tnorm(b.rank(u), h.apply(lattice, tuple_similarity_unchecked(lattice, scheme, t, u)))
                for u in universe))
            for t in universe)

    if kind is MeasureKind.S:
        return rank_subsethood(d1, d2)
    if kind is MeasureKind.E:
        return lattice.meet(rank_subsethood(d1, d2), rank_subsethood(d2, d1))
    if kind is MeasureKind.S_TUPLE:
        return tuple_subsethood(d1, d2, IDENTITY)
    if kind is MeasureKind.E_TUPLE:
        return lattice.meet(tuple_subsethood(d1, d2, IDENTITY), tuple_subsethood(d2, d1, IDENTITY))
    return tuple_subsethood(d1, d2, hedge)
