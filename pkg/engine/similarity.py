"""
Graded subsethood and similarity of ranked data tables.

Rank-based degrees compare ranks tuple by tuple; tuple-based degrees let a
tuple of the first table be matched by similar tuples of the second; the
hedged variant interpolates between the two through the hedge applied to
tuple similarity.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Tuple

from .errors import OpError, OpErrorKind, RankDBError
from .lattice import GLOBALIZATION, IDENTITY, Degree, Hedge
from .rdt import RankedDataTable
from .schema import DataTuple, enumerate_tuples, tuple_similarity_unchecked


class ComparisonMode(Enum):
    RANK_BASED = "rank"
    TUPLE_BASED = "tuple"
    HEDGED = "hedged"


class Enumeration(Enum):
    SUPPORT_UNION = "support"
    FULL = "full"


@dataclass(frozen=True)
class ComparisonConfig:
    mode: ComparisonMode = ComparisonMode.RANK_BASED
    hedge: Hedge = IDENTITY
    enumeration: Enumeration = Enumeration.SUPPORT_UNION

    @property
    def effective_hedge(self) -> Hedge:
        return self.hedge if self.mode is ComparisonMode.HEDGED else IDENTITY

    @property
    def is_tuple_based(self) -> bool:
        return self.mode is not ComparisonMode.RANK_BASED

    def describe(self) -> str:
        if self.mode is ComparisonMode.HEDGED:
            return f"hedged({self.hedge.kind.value})"
        return self.mode.value

    @classmethod
    def from_names(cls, mode: str = "rank", hedge: str = "identity",
                   enumeration: str = "support") -> "ComparisonConfig":
        try:
            parsed_mode = ComparisonMode(mode)
            parsed_enumeration = Enumeration(enumeration)
        except ValueError as exc:
            raise RankDBError(f"unknown comparison setting: {exc}") from None
        return cls(parsed_mode, Hedge.named(hedge), parsed_enumeration)


RANK_BASED = ComparisonConfig()
TUPLE_BASED = ComparisonConfig(ComparisonMode.TUPLE_BASED)
HEDGED_IDENTITY = ComparisonConfig(ComparisonMode.HEDGED, IDENTITY)
HEDGED_GLOBALIZATION = ComparisonConfig(ComparisonMode.HEDGED, GLOBALIZATION)


def _check_comparable(d1: RankedDataTable, d2: RankedDataTable, cfg: ComparisonConfig) -> None:
    if d1.lattice != d2.lattice:
        raise OpError(OpErrorKind.LATTICE_MISMATCH, f"{d1.lattice.name} vs {d2.lattice.name}")
    if d1.scheme != d2.scheme:
        raise OpError(OpErrorKind.SCHEME_MISMATCH,
                      f"{d1.scheme.describe()} vs {d2.scheme.describe()}")
    if cfg.is_tuple_based:
        for table in (d1, d2):
            if table.default_rank != table.lattice.bot:
                raise OpError(OpErrorKind.NONZERO_DEFAULT_UNSUPPORTED,
                              "tuple-based comparison needs tables whose off-support rank is 0")


def subsethood(d1: RankedDataTable, d2: RankedDataTable,
               cfg: ComparisonConfig = RANK_BASED) -> Degree:
    """Degree to which d1 is included in d2."""
    _check_comparable(d1, d2, cfg)
    if cfg.is_tuple_based:
        return _tuple_subsethood(d1, d2, cfg)
    return _rank_subsethood(d1, d2, cfg)


def table_similarity(d1: RankedDataTable, d2: RankedDataTable,
                     cfg: ComparisonConfig = RANK_BASED) -> Degree:
    """Similarity of two tables: subsethood in both directions, met together."""
    forward, backward = subsethood(d1, d2, cfg), subsethood(d2, d1, cfg)
    return d1.lattice.meet(forward, backward)


def compare(d1: RankedDataTable, d2: RankedDataTable,
            cfg: ComparisonConfig = RANK_BASED) -> Tuple[Degree, Degree, Degree]:
    """Return (S(d1, d2), S(d2, d1), E(d1, d2))."""
    forward, backward = subsethood(d1, d2, cfg), subsethood(d2, d1, cfg)
    return forward, backward, d1.lattice.meet(forward, backward)


def _rank_subsethood(d1: RankedDataTable, d2: RankedDataTable, cfg: ComparisonConfig) -> Degree:
    lattice = d1.lattice
    if cfg.enumeration is Enumeration.FULL:
        universe: Iterable[DataTuple] = enumerate_tuples(d1.scheme)
        return lattice.meet_all(lattice.residuum(d1.rank(t), d2.rank(t)) for t in universe)
    # Off-support tuples all contribute default1 -> default2.
    terms = [lattice.residuum(d1.default_rank, d2.default_rank)]
    terms.extend(lattice.residuum(d1.rank(t), d2.rank(t)) for t in set(d1.rows) | set(d2.rows))
    return lattice.meet_all(terms)


def _tuple_subsethood(d1: RankedDataTable, d2: RankedDataTable, cfg: ComparisonConfig) -> Degree:
    lattice = d1.lattice
    scheme = d1.scheme
    hedge = cfg.effective_hedge
    if cfg.enumeration is Enumeration.FULL:
        universe = list(enumerate_tuples(scheme))
        outer: List[Tuple[DataTuple, Degree]] = [(t, d1.rank(t)) for t in universe]
        inner: List[Tuple[DataTuple, Degree]] = [(t, d2.rank(t)) for t in universe]
    else:
        # Zero defaults: off-support tuples give 0 -> x = 1 outside and 0 * x = 0 inside.
        outer = list(d1.items())
        inner = list(d2.items())

    result = lattice.top
    for t, rank in outer:
        if rank == lattice.bot:
            continue
        best = lattice.bot
        for u, other in inner:
            if other == lattice.bot:
                continue
            closeness = hedge.apply(lattice, tuple_similarity_unchecked(lattice, scheme, t, u))
            degree = lattice.tnorm(other, closeness)
            if degree > best:
                best = degree
                if best == lattice.top:
                    break
        result = lattice.meet(result, lattice.residuum(rank, best))
        if result == lattice.bot:
            break
    return result
