"""
Classical relational algebra over sets of tuples.

Used to check that on the two-element chain with identity similarities every
ranked operation degenerates to its textbook counterpart.
"""
from typing import FrozenSet, Iterable, Mapping

from engine.rdt import RankedDataTable
from engine.schema import DataTuple, RelationScheme, enumerate_tuples, tuple_concat
from query.evaluator import derive_scheme, shift_degree
from query.nodes import (Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum, SelectAttr,
                         SelectClosure, SelectVal, Shift, TableRef, Union)

Relation = FrozenSet[DataTuple]


def as_relation(table: RankedDataTable) -> Relation:
    """Tuples of the universe ranked 1 (the table must be enumerable)."""
    top = table.lattice.top
    return frozenset(t for t in enumerate_tuples(table.scheme) if table.rank(t) == top)


def union(r: Relation, s: Relation) -> Relation:
    return r | s


def intersection(r: Relation, s: Relation) -> Relation:
    return r & s


def implication(universe: Iterable[DataTuple], r: Relation, s: Relation) -> Relation:
    return frozenset(t for t in universe if t not in r or t in s)


def projection(attributes: Iterable[str], r: Relation) -> Relation:
    names = tuple(attributes)
    return frozenset(t.restrict(names) for t in r)


def selection(r: Relation, attribute: str, value) -> Relation:
    return frozenset(t for t in r if t[attribute] == value)


def equality_selection(r: Relation, p: str, q: str) -> Relation:
    return frozenset(t for t in r if t[p] == t[q])


def product(r: Relation, s: Relation) -> Relation:
    return frozenset(tuple_concat(a, b) for a in r for b in s)


def naive_eval(expr: QueryExpr, catalog: Mapping[str, RankedDataTable]) -> Relation:
    """Classical evaluation; shifts by 1 are the identity and by 0 the full universe."""
    if isinstance(expr, TableRef):
        return as_relation(catalog[expr.name])
    scheme: RelationScheme = derive_scheme(expr, catalog).scheme
    if isinstance(expr, Union):
        return union(naive_eval(expr.left, catalog), naive_eval(expr.right, catalog))
    if isinstance(expr, (Meet, OTimes)):
        return intersection(naive_eval(expr.left, catalog), naive_eval(expr.right, catalog))
    if isinstance(expr, Residuum):
        return implication(enumerate_tuples(scheme), naive_eval(expr.left, catalog),
                           naive_eval(expr.right, catalog))
    if isinstance(expr, Shift):
        lattice = derive_scheme(expr, catalog).lattice
        if shift_degree(expr, lattice) == lattice.top:
            return naive_eval(expr.child, catalog)
        return frozenset(enumerate_tuples(scheme))
    if isinstance(expr, Project):
        return projection(scheme.attributes, naive_eval(expr.child, catalog))
    if isinstance(expr, (SelectVal, SelectClosure)):
        value = scheme.domain(expr.attribute).coerce(expr.literal)
        return selection(naive_eval(expr.child, catalog), expr.attribute, value)
    if isinstance(expr, SelectAttr):
        return equality_selection(naive_eval(expr.child, catalog), expr.p, expr.q)
    if isinstance(expr, Cross):
        return product(naive_eval(expr.left, catalog), naive_eval(expr.right, catalog))
    if isinstance(expr, Join):
        joined = product(naive_eval(expr.left, catalog), naive_eval(expr.right, catalog))
        return equality_selection(joined, expr.p, expr.q)
    raise TypeError(f"unknown node {type(expr).__name__}")


def naive_subset(r: Relation, s: Relation) -> bool:
    return r <= s
