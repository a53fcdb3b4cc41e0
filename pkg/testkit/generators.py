"""
Seeded random instances over small finite universes.

Every generator draws from a numpy Generator built from a SeedSequence, so a
seed reproduces the same lattice, domains, tables and plans. Universes stay
small (at most 3 attributes per generated scheme, at most 4 values per
domain) so that the brute-force oracle can enumerate them.
"""
import logging
from dataclasses import dataclass
from decimal import Decimal
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from engine.errors import RankDBError
from engine.lattice import Degree, LatticeKind, ResiduatedLattice, make_lattice
from engine.rdt import RankedDataTable
from engine.schema import (DomainWithSimilarity, RelationScheme, SimilarityKind, Value, ValueKind,
                           enumerate_tuples)
from query.evaluator import derive_scheme
from query.nodes import (Cross, Join, Meet, OTimes, Project, QueryExpr, Residuum, SelectAttr,
                         SelectClosure, SelectVal, Shift, TableRef, Union)

logger = logging.getLogger('rankdb')

MAX_ATTRIBUTES = 3
MAX_VALUES = 4
TEXT_VALUES = ('a', 'b', 'c', 'd')


class GenerationError(RankDBError):
    """The requested instance cannot be generated."""


@dataclass(frozen=True)
class GenSpec:
    chain_size: int = 20
    attributes: int = 2
    values_per_domain: int = 3
    max_rows: int = 4
    transitive: bool = False
    seed: int = 0
    lattice_kind: LatticeKind = LatticeKind.CHAIN

    def validate(self) -> "GenSpec":
        if not 0 <= self.attributes <= MAX_ATTRIBUTES:
            raise GenerationError(f"attributes must be between 0 and {MAX_ATTRIBUTES}")
        if not 1 <= self.values_per_domain <= MAX_VALUES:
            raise GenerationError(f"values_per_domain must be between 1 and {MAX_VALUES}")
        if self.max_rows < 0:
            raise GenerationError("max_rows must not be negative")
        return self

    def lattice(self) -> ResiduatedLattice:
        if self.lattice_kind is LatticeKind.CHAIN:
            return make_lattice(LatticeKind.CHAIN, self.chain_size)
        return make_lattice(self.lattice_kind)


def spawn_seeds(seed: int, count: int) -> List[np.random.SeedSequence]:
    """Independent child seeds, one per instance; a failing instance replays from its own."""
    return np.random.SeedSequence(seed).spawn(count)


def transitivize(pairs: Sequence[Tuple[Value, Value, Degree]],
                 lattice: ResiduatedLattice) -> Tuple[Tuple[Value, Value, Degree], ...]:
    """Max-tnorm transitive closure of a reflexive, symmetric similarity table.

    pairs lists unordered pairs of distinct values; the result lists every pair
    with a nonzero degree once, smaller value first.
    """
    values = sorted({u for u, _, _ in pairs} | {v for _, v, _ in pairs})
    matrix: Dict[Tuple[Value, Value], Degree] = {}
    for u in values:
        for v in values:
            matrix[(u, v)] = lattice.top if u == v else lattice.bot
    for u, v, degree in pairs:
        if u != v:
            matrix[(u, v)] = matrix[(v, u)] = lattice.join(matrix[(u, v)], degree)

    changed = True
    while changed:
        changed = False
        for b in values:
            for a in values:
                for c in values:
                    through = lattice.tnorm(matrix[(a, b)], matrix[(b, c)])
                    if through > matrix[(a, c)]:
                        matrix[(a, c)] = through
                        changed = True

    result = []
    for i, u in enumerate(values):
        for v in values[i + 1:]:
            if matrix[(u, v)] != lattice.bot:
                result.append((u, v, matrix[(u, v)]))
    return tuple(result)


def transitivize_domain(domain: DomainWithSimilarity) -> DomainWithSimilarity:
    """Copy of a table-similarity domain with its pairs transitively closed."""
    if domain.similarity_kind is not SimilarityKind.TABLE:
        return domain
    return DomainWithSimilarity(domain.id, domain.value_kind, domain.lattice, SimilarityKind.TABLE,
                                transitivize(domain.pairs, domain.lattice), values=domain.values)


class InstanceGenerator:
    """Draws lattices, domains, tables, catalogs and query plans from one seed."""

    def __init__(self, spec: GenSpec, seed: Optional[np.random.SeedSequence] = None):
        self.spec = spec.validate()
        self.rng = np.random.default_rng(seed if seed is not None else np.random.SeedSequence(spec.seed))
        self.lattice = spec.lattice()

    def degree(self, nonzero: bool = False) -> Degree:
        value = self.lattice.sample(self.rng, 1)[0]
        while nonzero and value == self.lattice.bot:
            value = self.lattice.sample(self.rng, 1)[0]
        return value

    def domain(self, domain_id: str, similarity_kind: Optional[SimilarityKind] = None,
               separating: bool = False) -> DomainWithSimilarity:
        count = self.spec.values_per_domain
        if similarity_kind is None:
            kinds = [SimilarityKind.TABLE, SimilarityKind.TABLE, SimilarityKind.RAMP, SimilarityKind.IDENTITY]
            similarity_kind = kinds[int(self.rng.integers(0, len(kinds)))]
        lattice = self.lattice

        if similarity_kind is SimilarityKind.RAMP:
            values = tuple(Decimal(i) for i in range(count))
            k = Decimal(int(self.rng.integers(1, count + 2)))
            return DomainWithSimilarity(domain_id, ValueKind.NUMBER, lattice, SimilarityKind.RAMP,
                                        k=k, values=values)

        values = TEXT_VALUES[:count]
        if similarity_kind is SimilarityKind.IDENTITY:
            return DomainWithSimilarity(domain_id, ValueKind.TEXT, lattice, values=values)

        pairs = []
        for i, u in enumerate(values):
            for v in values[i + 1:]:
                if self.rng.random() < 0.3:
                    continue
                degree = self.degree()
                if separating and degree == lattice.top:
                    continue
                pairs.append((u, v, degree))
        if self.spec.transitive:
            # Stays separating: a product reaches top only from two factors at top.
            pairs = list(transitivize(pairs, lattice))
        return DomainWithSimilarity(domain_id, ValueKind.TEXT, lattice, SimilarityKind.TABLE,
                                    tuple(pairs), values=values)

    def scheme(self, names: Optional[Sequence[str]] = None, separating: bool = False) -> RelationScheme:
        if names is None:
            names = [f"A{i}" for i in range(self.spec.attributes)]
        return RelationScheme.of({name: self.domain(f"D_{name}", separating=separating) for name in names})

    def rdt(self, scheme: RelationScheme, rows: Optional[int] = None) -> RankedDataTable:
        """Table holding `rows` distinct tuples (a random count up to max_rows when omitted)."""
        universe = list(enumerate_tuples(scheme))
        if rows is None:
            rows = int(self.rng.integers(0, min(self.spec.max_rows, len(universe)) + 1))
        if rows > len(universe):
            raise GenerationError(f"domain too small: {rows} rows requested from a universe "
                                  f"of {len(universe)} tuples")
        chosen = self.rng.choice(len(universe), size=rows, replace=False) if rows else []
        data = {universe[int(index)]: self.degree(nonzero=True) for index in chosen}
        return RankedDataTable(scheme, self.lattice, data)

    def variant(self, table: RankedDataTable, flips: int = 2) -> RankedDataTable:
        """Perturbed copy of table: a few ranks redrawn over the same universe."""
        universe = list(enumerate_tuples(table.scheme))
        data = dict(table.rows)
        for _ in range(flips):
            if not universe:
                break
            t = universe[int(self.rng.integers(0, len(universe)))]
            data[t] = self.degree()
        return RankedDataTable(table.scheme, table.lattice, data)

    def catalog(self, separating: bool = False,
                similarity_kind: Optional[SimilarityKind] = None) -> Dict[str, RankedDataTable]:
        """Tables r and s over {A, B} and t over {C}; A and C share a domain."""
        shared = self.domain("D_A", similarity_kind, separating)
        other = self.domain("D_B", similarity_kind, separating)
        pair_scheme = RelationScheme.of({'A': shared, 'B': other})
        single_scheme = RelationScheme.of({'C': shared})
        return {
            'r': self.rdt(pair_scheme),
            's': self.rdt(pair_scheme),
            't': self.rdt(single_scheme),
        }

    def alternative_catalog(self, catalog: Dict[str, RankedDataTable]) -> Dict[str, RankedDataTable]:
        return {name: self.variant(table) for name, table in catalog.items()}

    def shift_degree(self) -> Decimal:
        """A degree writable as a decimal numeral in query text."""
        text = self.lattice.serialize_degree(self.degree())
        if '/' in text:
            # Chains whose steps repeat in decimal only offer 0 and 1.
            text = '1' if self.rng.random() < 0.5 else '0'
        return Decimal(text)

    def literal(self, scheme: RelationScheme, attribute: str):
        values = scheme.domain(attribute).values
        return values[int(self.rng.integers(0, len(values)))]

    def plan(self, catalog: Dict[str, RankedDataTable], depth: int = 3,
             zero_default_projections: bool = False,
             allow_closure: bool = True) -> QueryExpr:
        """Random well-schemed query plan of at most `depth` levels over catalog.

        With zero_default_projections, projections only apply to operands
        whose off-support rank is 0.
        """
        names = sorted(catalog)
        if depth <= 1:
            return TableRef(names[int(self.rng.integers(0, len(names)))])

        builders = ['table', 'union', 'meet', 'otimes', 'residuum', 'shift', 'project',
                    'select', 'select_attr', 'cross', 'join']
        if allow_closure:
            builders.append('selectc')
        for _ in range(20):
            choice = builders[int(self.rng.integers(0, len(builders)))]
            candidate = self._build(choice, catalog, depth, zero_default_projections, allow_closure)
            if candidate is None:
                continue
            try:
                derive_scheme(candidate, catalog)
            except RankDBError:
                continue
            return candidate
        return TableRef(names[int(self.rng.integers(0, len(names)))])

    def _build(self, choice: str, catalog, depth: int, zero_default_projections: bool,
               allow_closure: bool) -> Optional[QueryExpr]:
        def sub() -> QueryExpr:
            return self.plan(catalog, depth - 1, zero_default_projections, allow_closure)

        if choice == 'table':
            return sub() if depth > 2 else self.plan(catalog, 1)
        if choice in ('union', 'meet', 'otimes', 'residuum', 'cross'):
            node_type = {'union': Union, 'meet': Meet, 'otimes': OTimes,
                         'residuum': Residuum, 'cross': Cross}[choice]
            return node_type(sub(), sub())
        if choice == 'shift':
            return Shift(self.shift_degree(), sub())

        child = sub()
        try:
            derived = derive_scheme(child, catalog)
        except RankDBError:
            return None
        attributes = derived.scheme.attributes
        if not attributes:
            return None
        if choice == 'project':
            if zero_default_projections and not derived.zero_default:
                return None
            keep = [a for a in attributes if self.rng.random() < 0.5] or [attributes[0]]
            return Project(tuple(keep), child)
        if choice in ('select', 'selectc'):
            attribute = attributes[int(self.rng.integers(0, len(attributes)))]
            node_type = SelectClosure if choice == 'selectc' else SelectVal
            return node_type(child, attribute, self.literal(derived.scheme, attribute))
        if choice == 'select_attr':
            p, q = self._shared_pair(derived.scheme)
            return SelectAttr(child, p, q) if p else None
        if choice == 'join':
            other = sub()
            try:
                scheme = derived.scheme.union(derive_scheme(other, catalog).scheme)
            except RankDBError:
                return None
            p, q = self._shared_pair(scheme)
            if p is None or p not in derived.scheme or q in derived.scheme:
                return None
            return Join(child, other, p, q)
        return None

    def _shared_pair(self, scheme: RelationScheme):
        pairs = [(p, q) for p in scheme.attributes for q in scheme.attributes
                 if p != q and scheme.domain(p) == scheme.domain(q)]
        if not pairs:
            return None, None
        return pairs[int(self.rng.integers(0, len(pairs)))]


def gen_domain(spec: GenSpec, domain_id: str = "D") -> DomainWithSimilarity:
    return InstanceGenerator(spec).domain(domain_id)


def gen_rdt(spec: GenSpec) -> RankedDataTable:
    """Table with exactly spec.max_rows distinct tuples and nonzero ranks."""
    generator = InstanceGenerator(spec)
    return generator.rdt(generator.scheme(), spec.max_rows)


def gen_catalog(spec: GenSpec) -> Dict[str, RankedDataTable]:
    return InstanceGenerator(spec).catalog()


def gen_plan(spec: GenSpec, catalog: Dict[str, RankedDataTable], depth: int = 3) -> QueryExpr:
    return InstanceGenerator(spec).plan(catalog, depth)
