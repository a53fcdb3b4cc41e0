"""
Ranked data tables and the relational operations on them.

A table stores a finite support plus a default rank shared by every tuple
outside it. The default is 0 except after a-shifts and componentwise
residua, where it becomes a -> 0 (resp. d1 -> d2) and the table describes
the whole, possibly infinite, tuple universe.
"""
from enum import Enum
from types import MappingProxyType
from typing import Any, Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import OpError, OpErrorKind, SchemaError
from .lattice import Degree, ResiduatedLattice
from .schema import (DataTuple, RelationScheme, enumerate_tuples, make_tuple, tuple_concat,
                     tuple_similarity_unchecked)


class RankedDataTable:
    """Immutable ranked data table in canonical form (no row stores the default)."""

    __slots__ = ('scheme', 'lattice', 'default_rank', '_rows')

    def __init__(self, scheme: RelationScheme, lattice: ResiduatedLattice,
                 rows: Optional[Mapping[DataTuple, Degree]] = None,
                 default_rank: Optional[Degree] = None):
        self.scheme = scheme
        self.lattice = lattice
        self.default_rank = lattice.bot if default_rank is None else lattice.check(default_rank)
        attributes = scheme.attributes
        canonical: Dict[DataTuple, Degree] = {}
        for t, rank in (rows or {}).items():
            if t.attributes != attributes:
                raise SchemaError(f"tuple {t!r} does not conform to scheme {scheme.describe()}")
            if rank != self.default_rank:
                canonical[t] = rank
        self._rows = MappingProxyType(canonical)

    @classmethod
    def from_records(cls, scheme: RelationScheme, lattice: ResiduatedLattice,
                     records: Iterable[Tuple[Mapping[str, Any], Degree]]) -> "RankedDataTable":
        """Build a zero-default table from (assignment, rank) pairs, rejecting duplicates."""
        rows: Dict[DataTuple, Degree] = {}
        for assignment, rank in records:
            t = make_tuple(scheme, assignment)
            if t in rows:
                raise SchemaError(f"duplicate tuple {t!r}")
            rows[t] = lattice.check(rank)
        return cls(scheme, lattice, rows)

    @property
    def rows(self) -> Mapping[DataTuple, Degree]:
        return self._rows

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self) -> Iterator[DataTuple]:
        return iter(self._rows)

    def items(self):
        return self._rows.items()

    def rank(self, t: DataTuple) -> Degree:
        return self._rows.get(t, self.default_rank)

    def sorted_rows(self) -> List[Tuple[DataTuple, Degree]]:
        """Rows by descending rank, then lexicographic tuple order."""
        return sorted(self._rows.items(), key=lambda item: (-self.lattice.to_float(item[1]), item[0]))

    def __eq__(self, other) -> bool:
        return (isinstance(other, RankedDataTable)
                and self.scheme == other.scheme
                and self.lattice == other.lattice
                and self.default_rank == other.default_rank
                and dict(self._rows) == dict(other._rows))

    def __hash__(self):
        return hash((self.scheme, self.lattice, self.default_rank, frozenset(self._rows.items())))

    def __repr__(self) -> str:
        return (f"<RankedDataTable {self.scheme.describe()} rows={len(self._rows)} "
                f"default={self.lattice.format_degree(self.default_rank)}>")


class CombineKind(Enum):
    UNION = "union"
    MEET = "meet"
    OTIMES = "otimes"
    RESIDUUM_CW = "residuum_cw"


class ClosureMode(Enum):
    SUPPORT = "support"
    FULL = "full"
    # Full when every attribute declares a finite universe, support otherwise.
    AUTO = "auto"


def rank_of(table: RankedDataTable, t: DataTuple) -> Degree:
    if t.attributes != table.scheme.attributes:
        raise OpError(OpErrorKind.SCHEME_MISMATCH,
                      f"tuple {t!r} is not over scheme {table.scheme.describe()}")
    return table.rank(t)


def _require_same_scheme(d1: RankedDataTable, d2: RankedDataTable) -> None:
    if d1.lattice != d2.lattice:
        raise OpError(OpErrorKind.LATTICE_MISMATCH,
                      f"{d1.lattice.name} vs {d2.lattice.name}")
    if d1.scheme != d2.scheme:
        raise OpError(OpErrorKind.SCHEME_MISMATCH,
                      f"{d1.scheme.describe()} vs {d2.scheme.describe()}")


def _require_zero_default(table: RankedDataTable, operation: str) -> None:
    if table.default_rank != table.lattice.bot:
        raise OpError(OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED,
                      f"{operation} needs a table whose off-support rank is 0")


def _connective(lattice: ResiduatedLattice, kind: CombineKind) -> Callable[[Degree, Degree], Degree]:
    return {
        CombineKind.UNION: lattice.join,
        CombineKind.MEET: lattice.meet,
        CombineKind.OTIMES: lattice.tnorm,
        CombineKind.RESIDUUM_CW: lattice.residuum,
    }[kind]


def combine(kind: CombineKind, d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    """Pointwise union, meet, otimes or residuum of two tables on one scheme."""
    _require_same_scheme(d1, d2)
    op = _connective(d1.lattice, kind)
    default = op(d1.default_rank, d2.default_rank)
    rows = {t: op(d1.rank(t), d2.rank(t)) for t in set(d1.rows) | set(d2.rows)}
    return RankedDataTable(d1.scheme, d1.lattice, rows, default)


def a_shift(a: Degree, table: RankedDataTable) -> RankedDataTable:
    lattice = table.lattice
    if not lattice.contains(a):
        raise OpError(OpErrorKind.LATTICE_MISMATCH,
                      f"{a!r} is not an element of the {lattice.name} carrier")
    rows = {t: lattice.residuum(a, rank) for t, rank in table.items()}
    return RankedDataTable(table.scheme, lattice, rows, lattice.residuum(a, table.default_rank))


def project(attributes: Iterable[str], table: RankedDataTable) -> RankedDataTable:
    """Supremum of ranks over the eliminated attributes."""
    target = table.scheme.restrict(attributes)
    lattice = table.lattice
    if target == table.scheme:
        return table
    rows: Dict[DataTuple, Degree] = {}
    names = target.attributes
    for t, rank in table.items():
        r = t.restrict(names)
        previous = rows.get(r)
        rows[r] = rank if previous is None else lattice.join(previous, rank)
    # Eliminated domains are treated as inexhaustible: some extension of r
    # always lies off the support and contributes the default.
    default = table.default_rank
    if default != lattice.bot:
        rows = {r: lattice.join(rank, default) for r, rank in rows.items()}
    return RankedDataTable(target, lattice, rows, default)


def select_sim(table: RankedDataTable, attribute: str, value: Any) -> RankedDataTable:
    """Similarity-based selection y ~ d: each rank is multiplied by t(y) ~ d."""
    domain = table.scheme.domain(attribute)
    _require_zero_default(table, "similarity-based selection")
    d = domain.coerce(value)
    lattice = table.lattice
    rows = {t: lattice.tnorm(rank, domain.similarity(t[attribute], d)) for t, rank in table.items()}
    return RankedDataTable(table.scheme, lattice, rows)


def select_attr(table: RankedDataTable, p: str, q: str) -> RankedDataTable:
    """Selection p ~ q between two attributes sharing one domain with similarity."""
    domain_p = table.scheme.domain(p)
    domain_q = table.scheme.domain(q)
    if domain_p != domain_q:
        raise OpError(OpErrorKind.MISSING_SIMILARITY,
                      f"{p} ({domain_p.id}) and {q} ({domain_q.id}) share no domain with similarity")
    _require_zero_default(table, "attribute selection")
    lattice = table.lattice
    rows = {t: lattice.tnorm(rank, domain_p.similarity(t[p], t[q])) for t, rank in table.items()}
    return RankedDataTable(table.scheme, lattice, rows)


def cartesian(d1: RankedDataTable, d2: RankedDataTable) -> RankedDataTable:
    if d1.lattice != d2.lattice:
        raise OpError(OpErrorKind.LATTICE_MISMATCH, f"{d1.lattice.name} vs {d2.lattice.name}")
    if not d1.scheme.is_disjoint(d2.scheme):
        shared = sorted(set(d1.scheme.attributes) & set(d2.scheme.attributes))
        raise OpError(OpErrorKind.SCHEMES_NOT_DISJOINT, f"shared attributes {shared}")
    _require_zero_default(d1, "cartesian product")
    _require_zero_default(d2, "cartesian product")
    lattice = d1.lattice
    rows = {}
    for s, rank_s in d1.items():
        for t, rank_t in d2.items():
            rows[tuple_concat(s, t)] = lattice.tnorm(rank_s, rank_t)
    return RankedDataTable(d1.scheme.union(d2.scheme), lattice, rows)


def join_sim(d1: RankedDataTable, d2: RankedDataTable, p: str, q: str) -> RankedDataTable:
    """Similarity-based theta-join: selection p ~ q over the cartesian product."""
    product = cartesian(d1, d2)
    return select_attr(product, p, q)


def select_closure(table: RankedDataTable, attribute: str, value: Any,
                   mode: ClosureMode = ClosureMode.SUPPORT) -> RankedDataTable:
    """Selection whose output is closed under tuple similarity.

    rank(t) = sup over stored t' of D(t') * (t' ~ t) * (t(y) ~ d), with t
    ranging over the support (SUPPORT) or over the full finite universe (FULL).
    """
    domain = table.scheme.domain(attribute)
    _require_zero_default(table, "closure selection")
    d = domain.coerce(value)
    lattice = table.lattice
    scheme = table.scheme
    if mode is ClosureMode.AUTO:
        mode = ClosureMode.FULL if scheme.is_enumerable else ClosureMode.SUPPORT
    if mode is ClosureMode.FULL:
        candidates = list(enumerate_tuples(scheme))
    else:
        candidates = list(table.rows)
    stored = list(table.items())
    rows = {}
    for t in candidates:
        match = domain.similarity(t[attribute], d)
        if match == lattice.bot:
            continue
        best = lattice.bot
        for u, rank in stored:
            degree = lattice.tnorm(lattice.tnorm(rank, tuple_similarity_unchecked(lattice, scheme, u, t)),
                                   match)
            if degree > best:
                best = degree
                if best == lattice.top:
                    break
        rows[t] = best
    return RankedDataTable(scheme, lattice, rows)
